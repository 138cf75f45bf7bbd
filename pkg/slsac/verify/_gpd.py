# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy import stats

from slsac.errors import RejectedInputError
from slsac.runtypes import CheckReport


@dataclass(frozen=True)
class GpdParams:
    """Generalized Pareto exceedances over threshold u with shape nu in [0, 1) and scale sigma."""

    shape: float
    scale: float
    threshold: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.shape < 1.0:
            raise RejectedInputError(f"GPD shape must be in [0, 1), got {self.shape}")
        if not self.scale > 0:
            raise RejectedInputError(f"GPD scale must be > 0, got {self.scale}")
        if self.threshold < 0:
            raise RejectedInputError(f"GPD threshold must be >= 0, got {self.threshold}")

    @property
    def tail_mean(self) -> float:
        """Mean of the law above the threshold: u + sigma / (1 - nu)."""
        return self.threshold + self.scale / (1.0 - self.shape)


def gpd_gamma(shape: float) -> float:
    """gamma(0) = e^-1 and gamma(nu) = (1 - nu)^(1 / nu) otherwise."""
    if not 0.0 <= shape < 1.0:
        raise RejectedInputError(f"GPD shape must be in [0, 1), got {shape}")
    if shape == 0.0:
        return float(np.exp(-1.0))
    return float((1.0 - shape) ** (1.0 / shape))


def gpd_inverse_cdf(p: float | np.ndarray, shape: float, scale: float) -> float | np.ndarray:
    """Exceedance x with P(X <= x) = p: sigma((1-p)^-nu - 1)/nu, or -sigma log(1-p) at nu = 0."""
    p = np.asarray(p, dtype=np.float64)
    if shape == 0.0:
        out = -scale * np.log1p(-p)
    else:
        out = scale * ((1.0 - p) ** (-shape) - 1.0) / shape
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class GpdViolation:
    beta: float
    empirical: float
    exact: float
    bound: float
    standard_error: float

    @property
    def slack(self) -> float:
        return self.bound + 3.0 * self.standard_error - self.empirical


def gpd_violation_check(
    params: GpdParams, epsilon: float, samples: int, rng: np.random.Generator
) -> GpdViolation:
    """P(Z > beta) against (1 - epsilon) * gamma(nu) with the constraint active at equality.

    Z has probability epsilon uniform on [0, u] and probability 1 - epsilon of u + GPD
    exceedance, so the conditional tail mean above u equals beta = u + sigma / (1 - nu).
    Draws use stratified uniforms pushed through the inverse CDF of the whole law.
    """
    if not 0.0 < epsilon < 1.0:
        raise RejectedInputError(f"epsilon must be in (0, 1), got {epsilon}")
    beta = params.tail_mean
    uniforms = (np.arange(samples) + rng.random(samples)) / samples
    body = uniforms < epsilon
    z = np.empty(samples)
    z[body] = params.threshold * uniforms[body] / epsilon
    tail_p = (uniforms[~body] - epsilon) / (1.0 - epsilon)
    z[~body] = params.threshold + gpd_inverse_cdf(tail_p, params.shape, params.scale)
    empirical = float(np.mean(z > beta))
    exact = (1.0 - epsilon) * float(
        stats.genpareto.sf(beta - params.threshold, c=params.shape, scale=params.scale)
    )
    return GpdViolation(
        beta=beta,
        empirical=empirical,
        exact=exact,
        bound=(1.0 - epsilon) * gpd_gamma(params.shape),
        standard_error=float(np.sqrt(max(empirical * (1.0 - empirical), 0.0) / samples)),
    )


def verify_gpd_bound(
    rng: np.random.Generator,
    samples: int = 1_000_000,
    shapes: Sequence[float] = (0.0, 0.25, 0.5),
    epsilons: Sequence[float] = (0.25, 0.5),
) -> CheckReport:
    worst = np.inf
    violations = 0
    details = {}
    for shape in shapes:
        for epsilon in epsilons:
            result = gpd_violation_check(GpdParams(shape, 1.0, 1.0), epsilon, samples, rng)
            worst = min(worst, result.slack)
            if result.slack < 0:
                violations += 1
            details[f"empirical_nu{shape}_eps{epsilon}"] = result.empirical
            details[f"bound_nu{shape}_eps{epsilon}"] = result.bound
    logger.debug(f"[verify][gpd] worst slack {worst:.3e}")
    return CheckReport(
        name="gpd_violation",
        passed=violations == 0,
        trials=len(shapes) * len(epsilons),
        violations=violations,
        worst_slack=float(worst),
        details=details,
    )
