# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np
from loguru import logger

from slsac.cost import empirical_cvar, tail_count
from slsac.errors import RejectedInputError
from slsac.runtypes import CheckReport

IDENTITY_TOLERANCE = 1e-12


def signal_decomposition(
    window: np.ndarray, epsilon: float, beta: float = 25.0
) -> tuple[float, float]:
    """Both sides of the CVaR-vs-mean signal identity, computed independently.

    lhs = (cvar - beta) - (mean - beta)
    rhs = (1 - k / N) * (cvar - body_mean), with body_mean the mean of the lowest N - k costs
    """
    window = np.asarray(window, dtype=np.float64).ravel()
    if window.size == 0:
        raise RejectedInputError("signal identity needs a nonempty window")
    n = window.size
    k = tail_count(n, epsilon)
    cvar = empirical_cvar(window, epsilon)
    lhs = (cvar - beta) - (float(np.mean(window)) - beta)
    body = np.sort(window)[: n - k]
    body_mean = float(np.mean(body)) if body.size else 0.0
    rhs = (1.0 - k / n) * (cvar - body_mean)
    return lhs, rhs


def verify_signal_identity(
    trials: int, rng: np.random.Generator, beta: float = 25.0
) -> CheckReport:
    """Random windows of 1..200 episode costs: identity discrepancy and CVaR >= mean dominance."""
    if trials < 1:
        raise RejectedInputError(f"need at least one trial, got {trials}")
    max_gap = 0.0
    dominance_failures = 0
    for _ in range(trials):
        n = int(rng.integers(1, 201))
        epsilon = float(rng.uniform(1e-6, 1.0 - 1e-6))
        window = rng.exponential(float(rng.uniform(0.5, 10.0)), size=n)
        lhs, rhs = signal_decomposition(window, epsilon, beta)
        max_gap = max(max_gap, abs(lhs - rhs))
        if lhs < -IDENTITY_TOLERANCE:
            dominance_failures += 1
    violations = int(max_gap > IDENTITY_TOLERANCE) + dominance_failures
    logger.debug(f"[verify][signal_identity] max discrepancy {max_gap:.3e}")
    return CheckReport(
        name="signal_identity",
        passed=violations == 0,
        trials=trials,
        violations=violations,
        worst_slack=IDENTITY_TOLERANCE - max_gap,
        details={"max_discrepancy": max_gap, "dominance_failures": float(dominance_failures)},
    )
