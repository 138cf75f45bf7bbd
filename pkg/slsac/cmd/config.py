# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from typing import Any

import click

from slsac.cmd.common import UsageFailure
from slsac.configmanager import ConfigManager


def _convert(value: str) -> Any:
    if value.lower() == "true":
        return True
    if value.lower() == "false":
        return False
    return value


def _split_key(key: str) -> tuple[str, str]:
    section, sep, option = key.partition(".")
    if not sep or not section or not option:
        raise UsageFailure(f"Invalid KEY '{key}'. Is it in the format 'section.option'?")
    return section, option


@click.command("config")
@click.argument("key", required=True)
@click.argument("values", nargs=-1)
def config(key: str, values: tuple[str, ...]):
    """Get or set a user setting such as core.output_dir or core.disable_plugins.

    With only KEY the current value is shown; with VALUES it is replaced. Several VALUES are
    stored as a list.
    """
    config_manager = ConfigManager()
    section, option = _split_key(key)

    if not values:
        result = config_manager.get(section, option)
        if result is None:
            click.echo(f"Configuration '{key}' not found.")
        else:
            click.echo(f"{key} = {result}")
        return

    converted = [_convert(value) for value in values]
    final_value = converted[0] if len(converted) == 1 else converted
    config_manager.set(section, option, final_value)
    click.echo(f"Configuration '{key}' set to '{final_value}'.")
