# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from ._bounds import (
    BOUND_EPSILONS,
    BoundComparison,
    TwoPointResult,
    cvar_error_bound,
    discrete_cvar,
    tightened_threshold,
    verify_bound_comparison,
    verify_bound_sweep,
    verify_cvar_error_bound,
    verify_worst_case,
    worst_case_two_point,
)
from ._consistency import (
    ConsistencyResult,
    fit_cost_critic_to_samples,
    quantile_error,
    verify_cost_critic_consistency,
)
from ._contraction import (
    DiscreteDist,
    TabularCmdp,
    bellman_apply,
    contraction_check,
    sup_w1,
    wasserstein_1,
)
from ._convergence import verify_empirical_convergence
from ._gpd import (
    GpdParams,
    GpdViolation,
    gpd_gamma,
    gpd_inverse_cdf,
    gpd_violation_check,
    verify_gpd_bound,
)
from ._quantile import PiecewiseQuantileFn, analytic_cvar, squared_distance
from ._signal import IDENTITY_TOLERANCE, signal_decomposition, verify_signal_identity
from ._suite import run_all, verify_tightened_threshold

__all__ = [
    "BOUND_EPSILONS",
    "IDENTITY_TOLERANCE",
    "BoundComparison",
    "ConsistencyResult",
    "DiscreteDist",
    "GpdParams",
    "GpdViolation",
    "PiecewiseQuantileFn",
    "TabularCmdp",
    "TwoPointResult",
    "analytic_cvar",
    "bellman_apply",
    "contraction_check",
    "cvar_error_bound",
    "discrete_cvar",
    "fit_cost_critic_to_samples",
    "gpd_gamma",
    "gpd_inverse_cdf",
    "gpd_violation_check",
    "quantile_error",
    "run_all",
    "signal_decomposition",
    "squared_distance",
    "sup_w1",
    "tightened_threshold",
    "verify_bound_comparison",
    "verify_bound_sweep",
    "verify_cost_critic_consistency",
    "verify_cvar_error_bound",
    "verify_empirical_convergence",
    "verify_gpd_bound",
    "verify_signal_identity",
    "verify_tightened_threshold",
    "verify_worst_case",
    "worst_case_two_point",
]
