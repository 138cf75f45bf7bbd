# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from loguru import logger

from slsac.cost import empirical_cvar
from slsac.errors import InfeasibleMarginError, RejectedInputError
from slsac.runtypes import CheckReport

from ._quantile import PiecewiseQuantileFn, analytic_cvar, squared_distance

BOUND_EPSILONS = (0.1, 0.25, 0.5, 1.0)
BOUND_TOLERANCE = 1e-9


def cvar_error_bound(delta: float, epsilon: float) -> float:
    """Largest CVaR gap allowed for quantile functions whose L2 distance is delta."""
    return delta / np.sqrt(epsilon)


def verify_cvar_error_bound(
    trials: int, rng: np.random.Generator, epsilons: Sequence[float] = BOUND_EPSILONS
) -> CheckReport:
    """|CVaR(q1) - CVaR(q2)| <= delta / sqrt(eps) on random pairs, integrals exact."""
    if trials < 1:
        raise RejectedInputError(f"need at least one trial, got {trials}")
    worst = np.inf
    violations = 0
    largest_gap = 0.0
    for _ in range(trials):
        q1 = PiecewiseQuantileFn.random(rng, int(rng.integers(2, 12)), float(rng.uniform(0.1, 5.0)))
        q2 = PiecewiseQuantileFn.random(rng, int(rng.integers(2, 12)), float(rng.uniform(0.1, 5.0)))
        delta = float(np.sqrt(squared_distance(q1, q2)))
        for eps in epsilons:
            gap = abs(analytic_cvar(q1, eps) - analytic_cvar(q2, eps))
            slack = cvar_error_bound(delta, eps) + BOUND_TOLERANCE - gap
            largest_gap = max(largest_gap, gap)
            worst = min(worst, slack)
            if slack < 0:
                violations += 1
    logger.debug(f"[verify][cvar_error_bound] {trials} pairs, worst slack {worst:.3e}")
    return CheckReport(
        name="cvar_error_bound",
        passed=violations == 0,
        trials=trials * len(epsilons),
        violations=violations,
        worst_slack=float(worst),
        details={"largest_gap": largest_gap},
    )


@dataclass(frozen=True)
class BoundComparison:
    cvar_bound: float
    expected_bound: float
    margin: float

    @property
    def tighter(self) -> bool:
        return self.margin > 0


def verify_bound_comparison(beta: float, delta: float, epsilon: float) -> BoundComparison:
    """Compare the CVaR-based bound beta + delta / sqrt(eps) with (beta + delta) / eps.

    ``margin`` is their difference, evaluated as (1 - eps) / eps * (beta + delta / (1 + sqrt(eps)))
    so it stays accurate as eps approaches 1.
    """
    if not (beta > 0 and delta > 0 and 0.0 < epsilon < 1.0):
        raise RejectedInputError(
            f"need beta > 0, delta > 0, 0 < epsilon < 1; got {beta}, {delta}, {epsilon}"
        )
    root = np.sqrt(epsilon)
    return BoundComparison(
        cvar_bound=float(beta + delta / root),
        expected_bound=float((beta + delta) / epsilon),
        margin=float((1.0 - epsilon) / epsilon * (beta + delta / (1.0 + root))),
    )


def verify_bound_sweep(trials: int, rng: np.random.Generator) -> CheckReport:
    """Strict tightness of the CVaR bound over random (beta, delta, epsilon)."""
    failures = 0
    worst = np.inf
    for _ in range(trials):
        beta = float(rng.uniform(1e-3, 100.0))
        delta = float(rng.uniform(1e-3, 10.0))
        epsilon = float(rng.uniform(1e-3, 1.0 - 1e-6))
        comparison = verify_bound_comparison(beta, delta, epsilon)
        worst = min(worst, comparison.margin)
        if not comparison.tighter:
            failures += 1
    return CheckReport(
        name="bound_comparison",
        passed=failures == 0,
        trials=trials,
        violations=failures,
        worst_slack=float(worst),
    )


def tightened_threshold(beta: float, delta: float, epsilon: float) -> float:
    """beta' = beta - delta / sqrt(epsilon); raises when that leaves no positive budget."""
    if not 0.0 < epsilon <= 1.0:
        raise RejectedInputError(f"epsilon must be in (0, 1], got {epsilon}")
    if delta < 0:
        raise RejectedInputError(f"delta must be >= 0, got {delta}")
    margin = cvar_error_bound(delta, epsilon)
    if beta <= margin:
        raise InfeasibleMarginError(
            f"beta={beta} does not exceed the safety margin {margin} (delta={delta}, epsilon={epsilon})"
        )
    return float(beta - margin)


def discrete_cvar(support: np.ndarray, probs: np.ndarray, epsilon: float) -> float:
    """Exact upper-tail CVaR of a finite law: average over its top epsilon probability mass."""
    order = np.argsort(support)[::-1]
    remaining = epsilon
    acc = 0.0
    for x, p in zip(np.asarray(support)[order], np.asarray(probs)[order]):
        take = min(float(p), remaining)
        acc += take * float(x)
        remaining -= take
        if remaining <= 0:
            break
    return acc / epsilon


@dataclass(frozen=True)
class TwoPointResult:
    target: float
    exact_cvar: float
    sampled_cvar: float
    standard_error: float


def worst_case_two_point(
    mu: float, epsilon: float, samples: int, rng: np.random.Generator
) -> TwoPointResult:
    """The law with mass epsilon at mu / epsilon and the rest at 0 has mean mu and CVaR mu / eps."""
    target = mu / epsilon
    exact = discrete_cvar(np.array([0.0, target]), np.array([1.0 - epsilon, epsilon]), epsilon)
    draws = np.where(rng.random(samples) < epsilon, target, 0.0)
    sampled = empirical_cvar(draws, epsilon)
    standard_error = target * np.sqrt((1.0 - epsilon) / (epsilon * samples))
    return TwoPointResult(target, exact, sampled, float(standard_error))


def verify_worst_case(rng: np.random.Generator, samples: int = 200_000) -> CheckReport:
    worst = np.inf
    cases = [(1.0, 0.25), (5.0, 0.5), (2.0, 0.1)]
    for mu, epsilon in cases:
        result = worst_case_two_point(mu, epsilon, samples, rng)
        exact_slack = 1e-9 * result.target - abs(result.exact_cvar - result.target)
        sampled_slack = 4.0 * result.standard_error - abs(result.sampled_cvar - result.target)
        worst = min(worst, exact_slack, sampled_slack)
    return CheckReport(
        name="worst_case_two_point",
        passed=worst >= 0,
        trials=len(cases),
        violations=0 if worst >= 0 else 1,
        worst_slack=float(worst),
    )
