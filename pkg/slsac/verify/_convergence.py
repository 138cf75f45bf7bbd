# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence

import numpy as np

from slsac.cost import empirical_cvar
from slsac.runtypes import CheckReport

from ._quantile import PiecewiseQuantileFn, analytic_cvar


def verify_empirical_convergence(
    rng: np.random.Generator,
    samples: int = 1_000_000,
    epsilons: Sequence[float] = (0.1, 0.25, 0.5, 1.0),
    rel_tolerance: float = 0.01,
) -> CheckReport:
    """Empirical CVaR of i.i.d. draws from a random quantile function vs its exact CVaR."""
    q = PiecewiseQuantileFn.random(rng, n_knots=8, scale=1.0, offset=1.0)
    draws = q(rng.random(samples))
    worst = np.inf
    details = {}
    for epsilon in epsilons:
        exact = analytic_cvar(q, epsilon)
        rel_error = abs(empirical_cvar(draws, epsilon) - exact) / abs(exact)
        worst = min(worst, rel_tolerance - rel_error)
        details[f"rel_error_eps{epsilon}"] = rel_error
    return CheckReport(
        name="empirical_convergence",
        passed=worst >= 0,
        trials=len(epsilons),
        violations=sum(1 for value in details.values() if value > rel_tolerance),
        worst_slack=float(worst),
        details=details,
    )
