# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Callable

import numpy as np
from loguru import logger

from slsac.errors import InfeasibleMarginError
from slsac.runtypes import CheckReport, VerificationReport

from ._bounds import (
    tightened_threshold,
    verify_bound_sweep,
    verify_cvar_error_bound,
    verify_worst_case,
)
from ._consistency import verify_cost_critic_consistency
from ._contraction import contraction_check
from ._convergence import verify_empirical_convergence
from ._gpd import verify_gpd_bound
from ._signal import verify_signal_identity


def verify_tightened_threshold() -> CheckReport:
    """Known margin cases plus the infeasible one, which must raise."""
    cases = [((25.0, 1.0, 0.25), 23.0), ((25.0, 0.0, 0.5), 25.0), ((10.0, 2.0, 1.0), 8.0)]
    worst = np.inf
    violations = 0
    for (beta, delta, epsilon), expected in cases:
        gap = abs(tightened_threshold(beta, delta, epsilon) - expected)
        worst = min(worst, 1e-12 - gap)
        if gap > 1e-12:
            violations += 1
    try:
        tightened_threshold(1.0, 1.0, 0.25)
        violations += 1
    except InfeasibleMarginError:
        pass
    return CheckReport(
        name="tightened_threshold",
        passed=violations == 0,
        trials=len(cases) + 1,
        violations=violations,
        worst_slack=float(worst),
    )


def _checks(include_critic_fit: bool) -> list[Callable[[np.random.Generator], CheckReport]]:
    checks = [
        lambda rng: verify_cvar_error_bound(1000, rng),
        lambda rng: verify_bound_sweep(10_000, rng),
        verify_worst_case,
        lambda rng: verify_tightened_threshold(),
        lambda rng: verify_signal_identity(10_000, rng),
        verify_gpd_bound,
        lambda rng: contraction_check(int(rng.integers(2, 11)), 0.99, rng),
        verify_empirical_convergence,
    ]
    if include_critic_fit:
        checks.append(verify_cost_critic_consistency)
    return checks


def run_all(seed: int = 0, include_critic_fit: bool = False) -> VerificationReport:
    """Run every numerical check, each on its own generator derived from ``seed``."""
    report = VerificationReport(seed=seed)
    for index, check in enumerate(_checks(include_critic_fit)):
        result = check(np.random.default_rng([seed, index]))
        status = "pass" if result.passed else "FAIL"
        logger.info(f"[verify] {result.name}: {status} (worst slack {result.worst_slack:.3e})")
        report.checks.append(result)
    return report
