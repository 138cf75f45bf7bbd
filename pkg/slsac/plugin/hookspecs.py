# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from typing import TYPE_CHECKING, Any

from pluggy import HookspecMarker

if TYPE_CHECKING:
    from slsac.envs import Environment

hookspec = HookspecMarker("slsac")


@hookspec(firstresult=True)
def create_environment(name: str, settings: dict[str, Any]) -> "Environment | None":
    """Build the environment registered under ``name``.

    Args:
        name (str): The ``env.name`` configuration value.
        settings (dict[str, Any]): The whole ``env`` configuration section.

    Returns:
        Optional[Environment]: A fresh environment, or None if this plugin does not provide
            ``name``.
    """


@hookspec
def environment_names() -> list[str]:
    """List the environment names this plugin can create.

    Returns:
        list[str]: Names accepted by this plugin's ``create_environment``.
    """
