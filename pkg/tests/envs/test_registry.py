# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import pytest

from slsac.configmanager import ConfigManager
from slsac.envs import HazardNavEnv, PointVelocityEnv
from slsac.errors import ConfigError
from slsac.plugin.manager import get_plugin_manager, known_environments, make_environment


@pytest.fixture(name="settings")
def fixture_settings(tmp_path, monkeypatch):
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    ConfigManager.delete_instance("slsac")
    yield ConfigManager()
    ConfigManager.delete_instance("slsac")


@pytest.fixture(name="pm")
def fixture_pm(settings):
    return get_plugin_manager()


def test_builtin_environments_registered(pm):
    assert known_environments(pm) == ["hazard_nav", "point_velocity"]


def test_point_velocity_from_settings(pm):
    env = make_environment({"name": "point_velocity", "horizon": 0, "v_limit": 1.5}, pm)
    assert isinstance(env, PointVelocityEnv)
    assert env.horizon == 400
    assert env.v_limit == 1.5


def test_hazard_nav_from_settings(pm):
    env = make_environment({"name": "hazard_nav", "horizon": 50, "hazards": 2}, pm)
    assert isinstance(env, HazardNavEnv)
    assert env.horizon == 50
    assert env.obs_dim == 8


def test_unknown_environment(pm):
    with pytest.raises(ConfigError) as exc:
        make_environment({"name": "cartpole"}, pm)
    assert "cartpole" in str(exc.value)
    assert "point_velocity" in str(exc.value)


@pytest.mark.parametrize("value", ["slsac.envs.hazard_nav", ["slsac.envs.hazard_nav"]])
def test_disabled_plugin_is_blocked(settings, value):
    settings.set("core", "disable_plugins", value)
    pm = get_plugin_manager()
    assert known_environments(pm) == ["point_velocity"]
    with pytest.raises(ConfigError):
        make_environment({"name": "hazard_nav"}, pm)
