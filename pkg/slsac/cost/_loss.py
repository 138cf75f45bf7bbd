# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from slsac.errors import RejectedInputError
from slsac.nn import GradGroup

from ._network import QuantileCostCritic, QuantileNet, quantile_backward, quantile_forward

if TYPE_CHECKING:
    from slsac.policy import GaussianPolicy
    from slsac.runtypes import TransitionBatch


def _check_kappa(kappa: float) -> None:
    if not kappa > 0:
        raise RejectedInputError(f"kappa must be > 0, got {kappa}")


def huber(delta: float | np.ndarray, kappa: float = 1.0) -> float | np.ndarray:
    """0.5 * delta**2 inside [-kappa, kappa], kappa * (|delta| - kappa / 2) outside."""
    _check_kappa(kappa)
    delta = np.asarray(delta, dtype=np.float64)
    abs_delta = np.abs(delta)
    out = np.where(abs_delta <= kappa, 0.5 * delta * delta, kappa * (abs_delta - 0.5 * kappa))
    return float(out) if out.ndim == 0 else out


def quantile_huber(
    delta: float | np.ndarray, tau: float | np.ndarray, kappa: float = 1.0
) -> float | np.ndarray:
    """|tau - 1{delta < 0}| * huber(delta, kappa)."""
    delta = np.asarray(delta, dtype=np.float64)
    weight = np.abs(np.asarray(tau, dtype=np.float64) - (delta < 0.0))
    out = weight * huber(delta, kappa)
    return float(out) if np.ndim(out) == 0 else out


@dataclass
class QuantileLossResult:
    loss: float
    grads: GradGroup
    values: np.ndarray


def quantile_regression_loss(
    net: QuantileNet,
    s: np.ndarray,
    a: np.ndarray,
    taus: np.ndarray,
    targets: np.ndarray,
    kappa: float = 1.0,
) -> QuantileLossResult:
    """Mean quantile Huber loss over every (row, tau_i, target_j) triple.

    ``targets`` is [B, N'] (one row of target samples per state/action row); ``taus`` is
    [N] or [B, N]. Gradients flow into ``net`` only.
    """
    _check_kappa(kappa)
    s2 = np.atleast_2d(np.asarray(s, dtype=np.float64))
    a2 = np.atleast_2d(np.asarray(a, dtype=np.float64))
    targets = np.atleast_2d(np.asarray(targets, dtype=np.float64))
    if s2.shape[0] == 0:
        raise RejectedInputError("quantile regression needs a nonempty batch")
    if targets.shape[0] != s2.shape[0]:
        raise RejectedInputError(
            f"{targets.shape[0]} target rows for a batch of {s2.shape[0]} state rows"
        )
    values, tape = quantile_forward(net, s2, a2, taus)
    taus_b = np.broadcast_to(np.asarray(taus, dtype=np.float64), values.shape)

    delta = targets[:, np.newaxis, :] - values[:, :, np.newaxis]
    weight = np.abs(taus_b[:, :, np.newaxis] - (delta < 0.0))
    loss = float(np.mean(weight * huber(delta, kappa)))

    count = delta.size
    d_values = -(weight * np.clip(delta, -kappa, kappa)).sum(axis=2) / count
    grads, _ = quantile_backward(net, tape, d_values)
    return QuantileLossResult(loss, grads, values)


def cost_critic_loss(
    critic: QuantileCostCritic,
    batch: "TransitionBatch",
    policy: "GaussianPolicy",
    n_quantiles: int,
    n_target_quantiles: int,
    gamma_c: float,
    kappa: float,
    rng: np.random.Generator,
    taus: np.ndarray | None = None,
    target_taus: np.ndarray | None = None,
) -> QuantileLossResult:
    """Distributional TD loss for the cost critic.

    Targets are c + gamma_c * (1 - d) * Z_target(s', a'; tau') with a' drawn from the current
    policy. Fractions are drawn from U[0, 1] unless fixed ``taus`` / ``target_taus`` are given.
    """
    if len(batch) == 0:
        raise RejectedInputError("cost critic loss needs a nonempty batch")
    size = len(batch)
    a_next, _ = policy.sample(batch.s_next, rng)
    tau = rng.random((size, n_quantiles)) if taus is None else taus
    tau_next = rng.random((size, n_target_quantiles)) if target_taus is None else target_taus
    z_next, _ = quantile_forward(critic.target, batch.s_next, a_next, tau_next)
    targets = batch.c[:, np.newaxis] + gamma_c * (1.0 - batch.d)[:, np.newaxis] * z_next
    return quantile_regression_loss(critic.online, batch.s, batch.a, tau, targets, kappa)
