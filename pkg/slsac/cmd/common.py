# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Iterator
from contextlib import contextmanager

import click

from slsac.errors import (
    ConfigError,
    InfeasibleMarginError,
    NumericalAbortError,
    RejectedInputError,
)

EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_NUMERICAL = 3


class UsageFailure(click.ClickException):
    exit_code = EXIT_USAGE


class VerificationFailure(click.ClickException):
    exit_code = EXIT_VERIFICATION


class NumericalAbort(click.ClickException):
    exit_code = EXIT_NUMERICAL


@contextmanager
def cli_errors() -> Iterator[None]:
    """Turn library errors into click exceptions carrying the documented exit status."""
    try:
        yield
    except NumericalAbortError as err:
        raise NumericalAbort(str(err)) from err
    except (ConfigError, RejectedInputError, InfeasibleMarginError) as err:
        raise UsageFailure(str(err)) from err
