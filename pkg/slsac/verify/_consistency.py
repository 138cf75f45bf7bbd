# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from slsac.cost import QuantileCostCritic, cvar_from_critic, quantile_regression_loss
from slsac.optim import OptimizerState, adamw_step
from slsac.runtypes import CheckReport

Sampler = Callable[[np.random.Generator, int], np.ndarray]

FIXED_STATE = np.array([0.5, -0.5])
FIXED_ACTION = np.array([0.3])


def uniform_cost(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.random(size)


def uniform_quantile(tau: np.ndarray) -> np.ndarray:
    return np.asarray(tau, dtype=np.float64)


def quantile_error(
    critic: QuantileCostCritic,
    s: np.ndarray,
    a: np.ndarray,
    q_true: Callable[[np.ndarray], np.ndarray],
    grid: int = 200,
) -> float:
    """Root mean squared gap between the critic and q_true on a midpoint grid of fractions."""
    taus = (np.arange(1, grid + 1) - 0.5) / grid
    gap = critic.quantile_values(s, a, taus) - q_true(taus)
    return float(np.sqrt(np.mean(gap * gap)))


@dataclass
class ConsistencyResult:
    estimates: dict[float, float] = field(default_factory=dict)
    analytic: dict[float, float] = field(default_factory=dict)
    delta: float = 0.0
    final_loss: float = 0.0

    def relative_error(self, epsilon: float) -> float:
        return abs(self.estimates[epsilon] - self.analytic[epsilon]) / abs(self.analytic[epsilon])


def fit_cost_critic_to_samples(
    rng: np.random.Generator,
    sampler: Sampler = uniform_cost,
    q_true: Callable[[np.ndarray], np.ndarray] = uniform_quantile,
    analytic: dict[float, float] | None = None,
    steps: int = 20_000,
    hidden: Sequence[int] = (64, 64),
    n_quantiles: int = 64,
    n_samples: int = 64,
    kappa: float = 0.01,
    lr: float = 5e-4,
) -> ConsistencyResult:
    """Quantile-regress a cost critic onto i.i.d. draws at one fixed (state, action).

    ``kappa`` defaults well below the sample spread so the Huber weighting recovers quantiles
    rather than expectiles.
    """
    analytic = analytic if analytic is not None else {0.25: 0.875, 0.5: 0.75}
    critic = QuantileCostCritic.init(FIXED_STATE.size, FIXED_ACTION.size, hidden, rng)
    state = OptimizerState(lr=lr)
    s = FIXED_STATE[np.newaxis, :]
    a = FIXED_ACTION[np.newaxis, :]
    loss = 0.0
    for step in range(steps):
        taus = rng.random(n_quantiles)
        targets = sampler(rng, n_samples)[np.newaxis, :]
        result = quantile_regression_loss(critic.online, s, a, taus, targets, kappa)
        adamw_step(critic.online, result.grads, state)
        loss = result.loss
        if step % 5000 == 0:
            logger.debug(f"[verify][critic_fit] step {step} loss {loss:.6f}")
    out = ConsistencyResult(analytic=dict(analytic), final_loss=loss)
    for epsilon in analytic:
        out.estimates[epsilon] = float(
            cvar_from_critic(critic, FIXED_STATE, FIXED_ACTION, epsilon, n=32)
        )
    out.delta = quantile_error(critic, FIXED_STATE, FIXED_ACTION, q_true)
    return out


def verify_cost_critic_consistency(
    rng: np.random.Generator, steps: int = 20_000, rel_tolerance: float = 0.05
) -> CheckReport:
    result = fit_cost_critic_to_samples(rng, steps=steps)
    errors = {eps: result.relative_error(eps) for eps in result.estimates}
    worst = min(rel_tolerance - err for err in errors.values())
    details = {f"cvar_eps{eps}": value for eps, value in result.estimates.items()}
    details["quantile_rmse"] = result.delta
    return CheckReport(
        name="cost_critic_consistency",
        passed=worst >= 0,
        trials=len(errors),
        violations=sum(1 for err in errors.values() if err > rel_tolerance),
        worst_slack=float(worst),
        details=details,
    )
