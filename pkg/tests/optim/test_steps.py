# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass

import numpy as np
import pytest

from slsac.errors import RejectedInputError, RejectedStepError
from slsac.nn import MlpParams, mlp_backward, mlp_forward
from slsac.optim import (
    LangevinVariant,
    OptimizerState,
    adamw_step,
    clip_combined,
    clip_global_norm,
    langevin_step,
    optimizer_step,
    parse_optimizer,
)


@dataclass
class Vector:
    data: np.ndarray
    version: int = 0

    def tensors(self):
        return [self.data]

    def mark_updated(self):
        self.version += 1


@pytest.fixture(name="rng")
def fixture_rng():
    return np.random.default_rng(11)


def _grads(params, rng):
    x = rng.normal(size=(8, params.input_dim))
    _, tape = mlp_forward(params, x)
    return mlp_backward(params, tape, rng.normal(size=(8, params.output_dim)))


def test_slsac_without_momentum_or_noise_is_gradient_descent(rng):
    """a = 0 and zero temperature reduce the update to p - lr * g exactly."""
    params = MlpParams.init([3, 6, 2], rng)
    grads = _grads(params, rng)
    expected = [p - 0.01 * g for p, g in zip(params.tensors(), grads.tensors())]
    state = OptimizerState(lr=0.01, a=0.0, t_inv=0.0, clip_c=1e9)
    langevin_step(params, grads, state, LangevinVariant.SLSAC_ASGLD, rng)
    for p, e in zip(params.tensors(), expected):
        assert np.array_equal(p, e)


@pytest.mark.parametrize("variant", ["vanilla_sgld", "slsac_asgld"])
def test_noise_variance_matches_temperature(rng, variant):
    """With a zero gradient the per-coordinate change has variance 2 * lr * t_inv."""
    n = 1_000_000
    params = Vector(np.zeros(n))
    state = OptimizerState(lr=0.01, t_inv=0.5)
    langevin_step(params, Vector(np.zeros(n)), state, variant, rng)
    assert np.var(params.data) == pytest.approx(0.01, rel=0.01)
    assert params.version == 1


def test_identical_critics_stay_equal_under_adamw(rng):
    first = MlpParams.init([2, 4, 1], rng)
    second = first.copy()
    s1, s2 = OptimizerState(lr=1e-3), OptimizerState(lr=1e-3)
    for _ in range(5):
        grads = _grads(first, np.random.default_rng(3))
        optimizer_step(first, grads, s1, None, np.random.default_rng(1))
        grads = _grads(second, np.random.default_rng(3))
        optimizer_step(second, grads, s2, None, np.random.default_rng(2))
    assert all(np.array_equal(a, b) for a, b in zip(first.tensors(), second.tensors()))


def test_identical_critics_diverge_under_langevin_noise(rng):
    first = MlpParams.init([2, 4, 1], rng)
    second = first.copy()
    s1 = OptimizerState(lr=1e-3, t_inv=1e-3)
    s2 = OptimizerState(lr=1e-3, t_inv=1e-3)
    r1, r2 = np.random.default_rng(1), np.random.default_rng(2)
    variant = LangevinVariant.SLSAC_ASGLD
    for _ in range(5):
        optimizer_step(first, _grads(first, np.random.default_rng(3)), s1, variant, r1)
        optimizer_step(second, _grads(second, np.random.default_rng(3)), s2, variant, r2)
    assert not all(np.array_equal(a, b) for a, b in zip(first.tensors(), second.tensors()))


@pytest.mark.parametrize("variant", [None, *LangevinVariant])
def test_non_finite_gradient_leaves_state_untouched(rng, variant):
    params = MlpParams.init([2, 3, 1], rng)
    grads = _grads(params, rng)
    grads.weights[0][0, 0] = np.nan
    before = [p.copy() for p in params.tensors()]
    state = OptimizerState()
    with pytest.raises(RejectedStepError):
        optimizer_step(params, grads, state, variant, rng)
    assert state.step_count == 0
    assert not state.m
    assert all(np.array_equal(b, p) for b, p in zip(before, params.tensors()))


def test_slsac_drift_is_clipped_elementwise(rng):
    params = Vector(np.zeros(3))
    state = OptimizerState(lr=1.0, a=0.0, t_inv=0.0, clip_c=0.7)
    langevin_step(params, Vector(np.array([5.0, -5.0, 0.1])), state, "slsac_asgld", rng)
    assert params.data.tolist() == pytest.approx([-0.7, 0.7, -0.1])


def test_clip_helpers():
    assert clip_combined(np.array([2.0, -0.1]), 1.0).tolist() == [1.0, -0.1]
    scaled = clip_global_norm([np.array([3.0]), np.array([4.0])], 1.0)
    assert float(np.hypot(scaled[0][0], scaled[1][0])) == pytest.approx(1.0)
    with pytest.raises(RejectedInputError):
        clip_combined(np.zeros(1), 0.0)


def test_adamw_first_step_moves_by_lr(rng):
    """Bias correction makes the first Adam step lr * sign(g) up to eps."""
    params = Vector(np.zeros(2))
    adamw_step(params, Vector(np.array([0.5, -2.0])), OptimizerState(lr=0.1))
    assert params.data.tolist() == pytest.approx([-0.1, 0.1], rel=1e-6)


def test_invalid_hyperparameters_rejected():
    with pytest.raises(RejectedInputError):
        OptimizerState(lr=0.0)
    with pytest.raises(RejectedInputError):
        OptimizerState(t_inv=-1.0)
    with pytest.raises(RejectedInputError):
        parse_optimizer("sgd")
    assert parse_optimizer("adamw") is None
    assert parse_optimizer("psgld") is LangevinVariant.PSGLD


def test_adamw_hand_computed_first_step():
    params = Vector(np.array([0.0]))
    state = OptimizerState(lr=0.1)
    adamw_step(params, Vector(np.array([1.0])), state)
    assert state.m[0][0] == pytest.approx(0.1)
    assert state.v[0][0] == pytest.approx(0.001)
    assert params.data[0] == pytest.approx(-0.1 / (1.0 + 1e-8))


def test_adamw_decay_only_step():
    params = Vector(np.array([1.0]))
    adamw_step(params, Vector(np.array([0.0])), OptimizerState(lr=0.1, weight_decay=0.01))
    assert params.data[0] == pytest.approx(1.0 - 0.01 * 0.1)


def test_zero_gradient_slsac_step_is_a_no_op(rng):
    params = Vector(np.array([0.25, -1.0]))
    state = OptimizerState(a=0.0, t_inv=0.0)
    langevin_step(params, Vector(np.zeros(2)), state, LangevinVariant.SLSAC_ASGLD, rng)
    assert params.data.tolist() == [0.25, -1.0]


def test_default_noise_scale(rng):
    """lr 3e-4 with t_inv 1e-8 perturbs each entry with standard deviation about 2.4495e-6."""
    params = Vector(np.zeros(200_000))
    state = OptimizerState(lr=3e-4, t_inv=1e-8)
    langevin_step(params, Vector(np.zeros(200_000)), state, "vanilla_sgld", rng)
    assert np.std(params.data) == pytest.approx(2.4495e-6, rel=0.01)


def test_clip_examples():
    assert clip_combined(np.array([2.0, -2.0, 0.0]), 0.7).tolist() == [0.7, -0.7, 0.0]
    assert clip_combined(np.array([-0.3]), 0.7).tolist() == [-0.3]


def test_psgld_first_step_divides_gradient_by_zeta(rng):
    params = Vector(np.array([0.0]))
    state = OptimizerState(lr=0.1, t_inv=0.0)
    langevin_step(params, Vector(np.array([2.0])), state, LangevinVariant.PSGLD, rng)
    zeta = np.sqrt(0.001 * 4.0 + 1e-8)
    assert state.m[0][0] == pytest.approx(0.2)
    assert state.v[0][0] == pytest.approx(0.004)
    assert params.data[0] == pytest.approx(-0.1 * 2.0 / zeta)


def test_full_asgld_first_step_uses_first_moment(rng):
    params = Vector(np.array([0.0]))
    state = OptimizerState(lr=0.1, t_inv=0.0)
    langevin_step(params, Vector(np.array([2.0])), state, LangevinVariant.FULL_ASGLD, rng)
    zeta = np.sqrt(0.001 * 4.0 + 1e-8)
    assert params.data[0] == pytest.approx(-0.1 * 0.2 / zeta)


def test_full_asgld_noise_is_scaled_by_zeta(rng):
    """With a zero gradient zeta is sqrt(eps), so the variance is 2 * lr * t_inv / sqrt(eps)."""
    n = 1_000_000
    params = Vector(np.zeros(n))
    state = OptimizerState(lr=0.01, t_inv=0.5)
    langevin_step(params, Vector(np.zeros(n)), state, LangevinVariant.FULL_ASGLD, rng)
    zeta = np.sqrt(1e-8)
    assert np.var(params.data) == pytest.approx(2 * 0.01 * 0.5 / zeta, rel=0.01)


def test_langevin_weight_decay_adds_prior_drift(rng):
    params = Vector(np.array([1.0, -2.0]))
    state = OptimizerState(lr=0.1, t_inv=0.0, weight_decay=0.1)
    langevin_step(params, Vector(np.zeros(2)), state, LangevinVariant.VANILLA_SGLD, rng)
    assert params.data.tolist() == pytest.approx([0.99, -1.98])
