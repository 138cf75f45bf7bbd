# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np
import pytest

from slsac.cost import QuantileCostCritic
from slsac.ensemble import RewardEnsemble, q_bar
from slsac.errors import RejectedInputError
from slsac.nn import MlpParams, mlp_forward
from slsac.policy import GaussianPolicy, alpha_update, policy_loss, sample_action
from slsac.runtypes import TransitionBatch


@pytest.fixture(name="rng")
def fixture_rng():
    return np.random.default_rng(9)


@pytest.fixture(name="setup")
def fixture_setup(rng):
    policy = GaussianPolicy.init(2, 1, [16], rng)
    ens = RewardEnsemble.create(2, 1, [16], 2, rng)
    critic = QuantileCostCritic.init(2, 1, [16], rng, embedding_dim=8)
    size = 6
    batch = TransitionBatch(
        s=rng.normal(size=(size, 2)),
        a=np.zeros((size, 1)),
        r=np.zeros(size),
        c=np.zeros(size),
        s_next=rng.normal(size=(size, 2)),
        d=np.zeros(size),
    )
    return policy, ens, critic, batch


def test_deterministic_zero_mean_action():
    policy = GaussianPolicy(MlpParams.zeros([2, 4, 2]))
    a, log_prob = sample_action(policy, np.array([0.3, -0.1]), None, deterministic=True)
    assert a.tolist() == [0.0]
    assert log_prob is None
    assert policy.act(np.zeros(2)).tolist() == [0.0]


def test_log_prob_matches_density_recomputation(rng):
    policy = GaussianPolicy.init(3, 2, [8], rng)
    s = rng.normal(size=3)
    noise = rng.standard_normal((1, 2))
    a, log_prob = sample_action(policy, s, None, noise=noise)
    raw, _ = mlp_forward(policy.trunk, s)
    mu, log_std = raw[:2], np.clip(raw[2:], -20.0, 2.0)
    u = mu + np.exp(log_std) * noise[0]
    gauss = -0.5 * ((u - mu) / np.exp(log_std)) ** 2 - log_std - 0.5 * np.log(2 * np.pi)
    expected = gauss.sum() - np.log(1.0 - np.tanh(u) ** 2 + 1e-6).sum()
    assert log_prob == pytest.approx(expected, abs=1e-10)
    assert np.allclose(a, np.tanh(u))


def test_samples_are_symmetric_and_bounded(rng):
    policy = GaussianPolicy(MlpParams.zeros([2, 4, 2]))
    actions, _ = sample_action(policy, np.zeros((100_000, 2)), rng)
    assert np.all(np.abs(actions) < 1.0)
    stderr = actions.std() / np.sqrt(actions.size)
    assert abs(actions.mean()) < 4 * stderr


def test_empty_batch_rejected(setup, rng):
    policy, ens, critic, batch = setup
    columns = (batch.s, batch.a, batch.r, batch.c, batch.s_next, batch.d)
    empty = TransitionBatch(*(np.zeros((0, *x.shape[1:])) for x in columns))
    with pytest.raises(RejectedInputError):
        policy_loss(policy, ens, critic, empty, 0.2, 0.0, 0.5, rng)


def test_loss_without_temperature_or_multiplier_is_negative_q(setup, rng):
    policy, ens, critic, batch = setup
    noise = rng.standard_normal((len(batch), 1))
    result = policy_loss(policy, ens, critic, batch, 0.0, 0.0, 0.5, noise=noise)
    a, _ = sample_action(policy, batch.s, None, noise=noise)
    assert result.loss == pytest.approx(-float(np.mean(q_bar(ens, batch.s, a))))
    assert result.entropy_term == 0.0


def test_loss_is_linear_in_multiplier(setup, rng):
    policy, ens, critic, batch = setup
    noise = rng.standard_normal((len(batch), 1))
    losses = [
        policy_loss(policy, ens, critic, batch, 0.2, lam, 0.5, noise=noise).loss
        for lam in (0.0, 1.0, 2.0)
    ]
    assert losses[2] - losses[0] == pytest.approx(2.0 * (losses[1] - losses[0]), rel=1e-12)


def test_policy_gradient_matches_finite_differences(setup, rng):
    """Reparameterized gradients with frozen noise agree with central differences."""
    policy, ens, critic, batch = setup
    noise = rng.standard_normal((len(batch), 1))

    def loss():
        return policy_loss(policy, ens, critic, batch, 0.2, 1.5, 0.5, noise=noise).loss

    grads = policy_loss(policy, ens, critic, batch, 0.2, 1.5, 0.5, noise=noise).grads
    h = 1e-6
    for tensor, analytic in zip(policy.trunk.tensors(), grads.tensors()):
        for idx in list(np.ndindex(tensor.shape))[:8]:
            saved = tensor[idx]
            tensor[idx] = saved + h
            up = loss()
            tensor[idx] = saved - h
            down = loss()
            tensor[idx] = saved
            numeric = (up - down) / (2 * h)
            assert abs(numeric - analytic[idx]) <= 1e-4 * max(1.0, abs(numeric))


def test_fixed_temperature_is_untouched():
    policy = GaussianPolicy(MlpParams.zeros([2, 4, 2]), alpha=0.3, alpha_auto=False)
    assert alpha_update(policy, np.array([5.0, 6.0])) == pytest.approx(0.3)


def test_temperature_stationary_at_target_entropy():
    policy = GaussianPolicy(MlpParams.zeros([2, 4, 2]), alpha=0.3)
    assert policy.target_entropy == -1.0
    assert alpha_update(policy, np.array([1.0, 1.0])) == pytest.approx(0.3)


def test_temperature_grows_when_policy_too_deterministic():
    policy = GaussianPolicy(MlpParams.zeros([2, 4, 2]), alpha=0.3)
    assert alpha_update(policy, np.array([3.0, 4.0])) > 0.3
