# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np
import pytest

from slsac.ensemble import (
    Aggregation,
    RewardEnsemble,
    aggregate,
    ensemble_loss,
    ensemble_target,
    ensemble_update,
    q_bar,
    q_bar_with_action_grad,
)
from slsac.errors import RejectedInputError
from slsac.nn import MlpParams
from slsac.optim import LangevinVariant, OptimizerState
from slsac.policy import GaussianPolicy
from slsac.runtypes import TransitionBatch


def _constant_critic(value: float) -> MlpParams:
    params = MlpParams.zeros([3, 4, 1])
    params.layers[-1].bias[...] = value
    return params


def _batch(rng, size=4, done=0.0):
    return TransitionBatch(
        s=rng.normal(size=(size, 2)),
        a=rng.uniform(-1, 1, size=(size, 1)),
        r=np.ones(size),
        c=np.zeros(size),
        s_next=rng.normal(size=(size, 2)),
        d=np.full(size, done),
    )


@pytest.fixture(name="rng")
def fixture_rng():
    return np.random.default_rng(3)


@pytest.fixture(name="policy")
def fixture_policy(rng):
    return GaussianPolicy.init(2, 1, [8], rng)


def test_aggregate_pair_minima():
    values = np.array([[1.0, 5.0], [2.0, 3.0], [4.0, 0.0], [6.0, 1.0]])
    assert aggregate(values, Aggregation.MEAN_MIN).tolist() == [2.5, 1.5]
    assert aggregate(values, Aggregation.MIN_MIN).tolist() == [1.0, 0.0]


def test_aggregate_ignores_pair_and_twin_order():
    values = np.array([[1.0], [2.0], [4.0], [6.0], [0.5], [9.0]])
    shuffled = values[[3, 2, 0, 1, 5, 4]]
    assert aggregate(values, "mean_min") == aggregate(shuffled, "mean_min")


def test_q_bar_examples():
    s, a = np.zeros(2), np.zeros(1)
    twins = RewardEnsemble([_constant_critic(2.0), _constant_critic(4.0)])
    assert q_bar(twins, s, a) == 2.0
    pairs = [_constant_critic(v) for v in (2.0, 3.0, 6.0, 7.0)]
    assert q_bar(RewardEnsemble(pairs, Aggregation.MEAN_MIN), s, a) == 4.0
    assert q_bar(RewardEnsemble(pairs, Aggregation.MIN_MIN), s, a) == 2.0


def test_min_min_never_exceeds_mean_min(rng):
    ens = RewardEnsemble.create(2, 1, [8], 3, rng)
    s, a = rng.normal(size=(32, 2)), rng.uniform(-1, 1, size=(32, 1))
    mean_min = q_bar(ens, s, a)
    ens.aggregation = Aggregation.MIN_MIN
    assert np.all(q_bar(ens, s, a) <= mean_min)


def test_terminal_target_is_reward(rng, policy):
    ens = RewardEnsemble.create(2, 1, [8], 2, rng)
    batch = _batch(rng, done=1.0)
    targets = ensemble_target(ens, batch, policy, 0.2, 0.99, rng)
    assert targets.tolist() == batch.r.tolist()


@pytest.mark.parametrize("aggregation,expected", [("mean_min", 4.96), ("min_min", 3.97)])
def test_target_hand_aggregation(rng, policy, aggregation, expected):
    critics = [_constant_critic(v) for v in (3.0, 4.0, 5.0, 6.0)]
    ens = RewardEnsemble(critics, aggregation)
    targets = ensemble_target(ens, _batch(rng, size=1), policy, 0.0, 0.99, rng)
    assert targets[0] == pytest.approx(expected)


def test_loss_scalar_case(rng):
    ens = RewardEnsemble([_constant_critic(2.0), _constant_critic(2.0)])
    losses = ensemble_loss(ens, _batch(rng, size=1), np.array([5.0]))
    assert losses[0].loss == pytest.approx(9.0)
    assert losses[0].grads.biases[-1][0] == pytest.approx(-6.0)


def test_loss_rejects_misaligned_targets(rng):
    ens = RewardEnsemble([_constant_critic(0.0), _constant_critic(0.0)])
    with pytest.raises(RejectedInputError):
        ensemble_loss(ens, _batch(rng, size=3), np.zeros(2))


def test_fixed_point_update_changes_nothing(rng, policy):
    critics = [MlpParams.zeros([3, 4, 1]) for _ in range(4)]
    template = OptimizerState(a=0.0, t_inv=0.0)
    ens = RewardEnsemble(critics, variant=LangevinVariant.SLSAC_ASGLD, optimizer=template)
    batch = _batch(rng, done=1.0)
    batch = TransitionBatch(batch.s, batch.a, np.zeros(4), batch.c, batch.s_next, batch.d)
    result = ensemble_update(ens, batch, policy, 0.2, 0.99, rng)
    assert result.mean_loss == 0.0
    assert all(not np.any(t) for c in ens.critics for t in c.tensors())


def test_identical_critics_under_adamw_stay_identical(rng, policy):
    base = MlpParams.init([3, 8, 1], rng)
    ens = RewardEnsemble([base, base.copy()], variant=None, optimizer=OptimizerState(lr=1e-2))
    for _ in range(10):
        ensemble_update(ens, _batch(rng), policy, 0.2, 0.99, rng)
    assert all(np.array_equal(a, b) for a, b in zip(*(c.tensors() for c in ens.critics)))


def test_identical_critics_under_langevin_separate(rng, policy):
    base = MlpParams.init([3, 8, 1], rng)
    template = OptimizerState(t_inv=1e-8)
    ens = RewardEnsemble([base, base.copy()], optimizer=template, seed=4)
    for _ in range(10):
        ensemble_update(ens, _batch(rng), policy, 0.2, 0.99, rng)
    first, second = (np.concatenate([t.ravel() for t in c.tensors()]) for c in ens.critics)
    assert np.linalg.norm(first - second) > 0


def test_action_gradient_matches_finite_differences(rng):
    ens = RewardEnsemble.create(2, 1, [8], 2, rng)
    s = rng.normal(size=(3, 2))
    a = rng.uniform(-0.5, 0.5, size=(3, 1))
    _, grad = q_bar_with_action_grad(ens, s, a)
    h = 1e-6
    up, down = a + h, a - h
    numeric = (q_bar(ens, s, up) - q_bar(ens, s, down)) / (2 * h)
    assert numeric == pytest.approx(grad[:, 0], abs=1e-6)


def test_odd_critic_count_rejected(rng):
    with pytest.raises(RejectedInputError):
        RewardEnsemble([_constant_critic(0.0)])
    with pytest.raises(RejectedInputError):
        RewardEnsemble.create(2, 1, [8], 0, rng)
