# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np
import pytest

from slsac.envs import PointVelocityEnv, env_reset, env_step


@pytest.fixture(name="env")
def fixture_env():
    return PointVelocityEnv(v_limit=1.0, horizon=400, reset_noise=0.0)


def test_reset_without_noise_is_origin(env):
    assert env_reset(env, np.random.default_rng(0)).tolist() == [0.0, 0.0]


def test_reset_is_seed_determined():
    first = PointVelocityEnv().reset(np.random.default_rng(12))
    second = PointVelocityEnv().reset(np.random.default_rng(12))
    assert np.array_equal(first, second)
    assert abs(first[1]) <= 0.05


def test_accelerate_from_rest(env):
    env.reset(np.random.default_rng(0))
    result = env_step(env, [1.0])
    assert result.s_next[1] == pytest.approx(0.1)
    assert result.r == pytest.approx(0.1)
    assert result.c == 0.0
    assert not result.d


def test_crossing_the_limit_costs(env):
    env.reset(np.random.default_rng(0))
    env.state = (0.0, 1.0)
    result = env_step(env, [1.0])
    assert result.s_next[1] == pytest.approx(1.1)
    assert result.c == 1.0


def test_zero_action_at_rest(env):
    env.reset(np.random.default_rng(0))
    result = env_step(env, [0.0])
    assert result.s_next.tolist() == [0.0, 0.0]
    assert result.r == 0.0
    assert result.c == 0.0


def test_actions_are_clamped(env):
    env.reset(np.random.default_rng(0))
    assert env_step(env, [5.0]).r == pytest.approx(0.1)


def test_full_throttle_closed_form(env):
    """Always a = 1: speed ramps to the cap of 3 and every step past v = 1 costs one."""
    env.reset(np.random.default_rng(0))
    total_r = total_c = 0.0
    steps = 0
    done = False
    while not done:
        result = env_step(env, [1.0])
        total_r += result.r
        total_c += result.c
        steps += 1
        done = result.d
    assert steps == 400
    assert total_r == pytest.approx(1156.5)
    assert total_c == 390.0


def test_trajectories_are_deterministic():
    actions = np.random.default_rng(1).uniform(-1, 1, size=50)

    def rollout():
        env = PointVelocityEnv()
        out = [env.reset(np.random.default_rng(4))]
        for a in actions:
            result = env.step(np.array([a]))
            out.append(np.array([*result.s_next, result.r, result.c]))
        return np.concatenate(out)

    assert np.array_equal(rollout(), rollout())
