# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import sys

import click
from loguru import logger

from slsac import __version__
from slsac.cmd.ablate import ablate_command
from slsac.cmd.config import config
from slsac.cmd.evaluate import eval_command
from slsac.cmd.plot import plot_command
from slsac.cmd.train import train_command
from slsac.cmd.verify import verify_command


@click.group()
@click.version_option(__version__, "--version", "-v", message="%(version)s")
@click.option(
    "--log-level",
    type=click.Choice(
        ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"],
        case_sensitive=False,
    ),
    default="INFO",
)
def main(log_level="INFO"):
    # loguru has no level setter; swap the stderr sink instead
    logger.remove()
    logger.add(sys.stderr, level=log_level.upper())


@click.command("version")
def version():
    """Print version information."""
    click.echo(__version__)


main.add_command(train_command)
main.add_command(eval_command)
main.add_command(ablate_command)
main.add_command(verify_command)
main.add_command(plot_command)
main.add_command(config)
main.add_command(version)


if __name__ == "__main__":
    main()
