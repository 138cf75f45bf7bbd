# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np
import pytest

from slsac.errors import RejectedInputError
from slsac.verify import (
    DiscreteDist,
    GpdParams,
    TabularCmdp,
    bellman_apply,
    contraction_check,
    gpd_gamma,
    gpd_inverse_cdf,
    gpd_violation_check,
    run_all,
    signal_decomposition,
    sup_w1,
    verify_cost_critic_consistency,
    verify_empirical_convergence,
    verify_signal_identity,
    wasserstein_1,
)


@pytest.fixture(name="rng")
def fixture_rng():
    return np.random.default_rng(8)


def test_signal_identity_example():
    lhs, rhs = signal_decomposition(np.array([1.0, 2.0, 3.0, 4.0]), 0.5)
    assert lhs == pytest.approx(1.0)
    assert rhs == pytest.approx(1.0)


def test_signal_identity_constant_window():
    lhs, rhs = signal_decomposition(np.full(7, 3.0), 0.3)
    assert lhs == pytest.approx(0.0, abs=1e-15)
    assert rhs == pytest.approx(0.0, abs=1e-15)


def test_signal_identity_random_windows(rng):
    report = verify_signal_identity(10_000, rng)
    assert report.passed
    assert report.details["max_discrepancy"] <= 1e-12


def test_gpd_gamma_values():
    assert gpd_gamma(0.0) == pytest.approx(0.367879, abs=1e-6)
    assert gpd_gamma(0.5) == pytest.approx(0.25)
    with pytest.raises(RejectedInputError):
        gpd_gamma(1.0)


def test_gpd_inverse_cdf_origin():
    assert gpd_inverse_cdf(0.0, 0.25, 1.0) == 0.0
    assert gpd_inverse_cdf(0.0, 0.0, 2.0) == 0.0


@pytest.mark.parametrize("shape", [0.0, 0.25, 0.5])
@pytest.mark.parametrize("epsilon", [0.25, 0.5])
def test_gpd_violation_within_bound(rng, shape, epsilon):
    result = gpd_violation_check(GpdParams(shape, 1.0, 1.0), epsilon, 1_000_000, rng)
    assert result.slack >= 0
    assert result.empirical == pytest.approx(result.exact, abs=5e-3)


def test_wasserstein_of_point_masses():
    p = DiscreteDist(np.array([1.0]), np.array([1.0]))
    q = DiscreteDist(np.array([0.0]), np.array([1.0]))
    assert wasserstein_1(p, q) == pytest.approx(1.0)
    assert wasserstein_1(p, p) == 0.0


def test_contraction_point_mass_shift():
    """A single deterministic state: the operator scales a unit shift to gamma."""
    mdp = TabularCmdp(
        transition=np.ones((1, 1, 1)),
        policy=np.ones((1, 1)),
        cost_atoms=np.zeros((1, 1, 1)),
        cost_probs=np.ones((1, 1, 1)),
    )
    z1 = [[DiscreteDist(np.array([1.0]), np.array([1.0]))]]
    z2 = [[DiscreteDist(np.array([0.0]), np.array([1.0]))]]
    after = sup_w1(bellman_apply(mdp, z1, 0.9), bellman_apply(mdp, z2, 0.9))
    assert after == pytest.approx(0.9)


def test_contraction_random_instances(rng):
    for states in (2, 5):
        assert contraction_check(states, 0.99, rng, instances=100).passed


def test_contraction_rejects_bad_arguments(rng):
    with pytest.raises(RejectedInputError):
        contraction_check(11, 0.9, rng)
    with pytest.raises(RejectedInputError):
        contraction_check(3, 1.0, rng)


def test_empirical_cvar_converges(rng):
    report = verify_empirical_convergence(rng)
    assert report.passed
    assert set(report.details) == {
        "rel_error_eps0.1",
        "rel_error_eps0.25",
        "rel_error_eps0.5",
        "rel_error_eps1.0",
    }


@pytest.mark.slow
def test_default_suite_passes():
    report = run_all(seed=0)
    assert report.passed, report.failed_names()
    assert len(report.checks) == 8


@pytest.mark.slow
def test_cost_critic_recovers_uniform_cvar():
    report = verify_cost_critic_consistency(np.random.default_rng(0))
    assert report.passed, report.details
