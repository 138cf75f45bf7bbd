# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from typing import TYPE_CHECKING, Any

import pluggy
from loguru import logger

from slsac.configmanager import ConfigManager
from slsac.errors import ConfigError
from slsac.plugin import hookspecs

if TYPE_CHECKING:
    from slsac.envs import Environment


def _register_plugins(pm: pluggy.PluginManager) -> None:
    # pylint: disable=import-outside-toplevel
    # environment modules import slsac.plugin themselves
    from slsac.envs import hazard_nav, point_velocity

    internal_plugins = (
        point_velocity,
        hazard_nav,
    )
    for plugin in internal_plugins:
        pm.register(plugin)


def set_blocked_plugins(pm: pluggy.PluginManager) -> None:
    """Unregisters and blocks every plugin named in ``core.disable_plugins``."""
    config_manager = ConfigManager()
    names = config_manager.get("core", "disable_plugins", [])
    # `slsac config` stores a single value as a plain string
    if isinstance(names, str):
        names = [names]

    for plugin_name in names:
        if pm.is_blocked(plugin_name):
            logger.info(f"Plugin '{plugin_name}' is already disabled.")
            continue

        plugin = pm.unregister(name=plugin_name)
        if plugin is None:
            logger.info(f"Disabled plugin '{plugin_name}' not found.")
            continue

        pm.set_blocked(plugin_name)


def get_plugin_manager() -> pluggy.PluginManager:
    pm = pluggy.PluginManager("slsac")
    pm.add_hookspecs(hookspecs)
    pm.load_setuptools_entrypoints("slsac")
    _register_plugins(pm)
    set_blocked_plugins(pm)
    pm.check_pending()
    return pm


def known_environments(pm: pluggy.PluginManager) -> list[str]:
    return sorted(name for names in pm.hook.environment_names() for name in names)


def make_environment(
    settings: dict[str, Any], pm: pluggy.PluginManager | None = None
) -> "Environment":
    """
    Ask the registered plugins for the environment named by ``settings["name"]``.

    Args:
        settings (dict[str, Any]): The ``env`` configuration section.
        pm (Optional[pluggy.PluginManager]): Plugin manager to use; a fresh one if omitted.

    Returns:
        Environment: The environment the first claiming plugin built.

    Raises:
        ConfigError: If no registered plugin provides the requested name.
    """
    pm = pm or get_plugin_manager()
    name = settings.get("name", "")
    env = pm.hook.create_environment(name=name, settings=settings)
    if env is None:
        known = ", ".join(known_environments(pm))
        raise ConfigError([f"env.name: unknown environment '{name}' (known: {known})"])
    return env
