# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from slsac.errors import RejectedInputError
from slsac.nn import MlpGrads, MlpParams, mlp_backward, mlp_forward
from slsac.optim import LangevinVariant, OptimizerState, optimizer_step

if TYPE_CHECKING:
    from slsac.policy import GaussianPolicy
    from slsac.runtypes import TransitionBatch


# trainer and agent streams are keyed (seed, 0..5)
CRITIC_STREAM = 7


class Aggregation(str, Enum):
    MEAN_MIN = "mean_min"
    MIN_MIN = "min_min"


class RewardEnsemble:
    """M twin pairs of Q networks; pair m is critics (2m, 2m + 1) in zero-based order.

    Each critic owns its optimizer state and a noise stream seeded by (run seed, critic index).
    ``variant is None`` trains the critics with AdamW instead of Langevin dynamics.
    """

    def __init__(
        self,
        critics: Sequence[MlpParams],
        aggregation: Aggregation | str = Aggregation.MEAN_MIN,
        variant: LangevinVariant | None = LangevinVariant.SLSAC_ASGLD,
        optimizer: OptimizerState | None = None,
        seed: int = 0,
        targets: Sequence[MlpParams] | None = None,
    ) -> None:
        if not critics or len(critics) % 2:
            raise RejectedInputError(f"need an even, nonzero number of critics, got {len(critics)}")
        self.critics = list(critics)
        self.targets = list(targets) if targets is not None else [c.copy() for c in critics]
        if len(self.targets) != len(self.critics):
            raise RejectedInputError("online and target critic counts differ")
        self.aggregation = Aggregation(aggregation)
        self.variant = variant
        template = optimizer if optimizer is not None else OptimizerState()
        self.states = [template.hyper_copy() for _ in self.critics]
        self.rngs = [
            np.random.default_rng([seed, CRITIC_STREAM, index]) for index in range(len(self.critics))
        ]

    @classmethod
    def create(
        cls,
        obs_dim: int,
        act_dim: int,
        hidden: Sequence[int],
        m: int,
        rng: np.random.Generator,
        **kwargs,
    ) -> "RewardEnsemble":
        if m < 1:
            raise RejectedInputError(f"ensemble needs at least one pair, got m={m}")
        sizes = [obs_dim + act_dim, *hidden, 1]
        return cls([MlpParams.init(sizes, rng) for _ in range(2 * m)], **kwargs)

    @property
    def m(self) -> int:
        return len(self.critics) // 2


def aggregate(values: np.ndarray, aggregation: Aggregation | str) -> np.ndarray:
    """Reduce [2M, B] critic values to [B].

    Pair minima are sorted before averaging so the result does not depend on pair order.
    """
    pair_mins = np.minimum(values[0::2], values[1::2])
    if Aggregation(aggregation) is Aggregation.MIN_MIN:
        return pair_mins.min(axis=0)
    return np.sort(pair_mins, axis=0).mean(axis=0)


def _critic_values(nets: Sequence[MlpParams], x: np.ndarray) -> np.ndarray:
    return np.stack([mlp_forward(net, x)[0][:, 0] for net in nets])


def ensemble_target(
    ens: RewardEnsemble,
    batch: "TransitionBatch",
    policy: "GaussianPolicy",
    alpha: float,
    gamma: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """y = r + gamma * (1 - d) * (agg_target_Q(s', a') - alpha * log pi_target(a' | s')).

    One a' is drawn per transition from the target policy and shared by every critic.
    """
    if len(batch) == 0:
        raise RejectedInputError("ensemble target needs a nonempty batch")
    a_next, log_prob = policy.sample(batch.s_next, rng, use_target=True)
    x_next = np.concatenate([batch.s_next, a_next], axis=1)
    agg = aggregate(_critic_values(ens.targets, x_next), ens.aggregation)
    return batch.r + gamma * (1.0 - batch.d) * (agg - alpha * log_prob)


@dataclass
class CriticLoss:
    loss: float
    grads: MlpGrads


def ensemble_loss(
    ens: RewardEnsemble, batch: "TransitionBatch", targets: np.ndarray
) -> list[CriticLoss]:
    """Per-critic mean squared Bellman error against one shared target vector."""
    targets = np.asarray(targets, dtype=np.float64)
    if targets.shape != (len(batch),):
        raise RejectedInputError(f"{targets.size} targets for a batch of {len(batch)}")
    if len(batch) == 0:
        raise RejectedInputError("ensemble loss needs a nonempty batch")
    x = np.concatenate([batch.s, batch.a], axis=1)
    size = len(batch)
    out = []
    for critic in ens.critics:
        q, tape = mlp_forward(critic, x)
        diff = q[:, 0] - targets
        grads = mlp_backward(critic, tape, (2.0 / size) * diff[:, np.newaxis])
        out.append(CriticLoss(float(np.mean(diff * diff)), grads))
    return out


@dataclass
class EnsembleUpdate:
    targets: np.ndarray
    losses: list[float]

    @property
    def mean_loss(self) -> float:
        return float(np.mean(self.losses))


def ensemble_update(
    ens: RewardEnsemble,
    batch: "TransitionBatch",
    policy: "GaussianPolicy",
    alpha: float,
    gamma: float,
    rng: np.random.Generator,
) -> EnsembleUpdate:
    """Step every critic once with its own optimizer state and noise stream."""
    targets = ensemble_target(ens, batch, policy, alpha, gamma, rng)
    losses = ensemble_loss(ens, batch, targets)
    for critic, state, critic_rng, result in zip(ens.critics, ens.states, ens.rngs, losses):
        optimizer_step(critic, result.grads, state, ens.variant, critic_rng)
    values = [result.loss for result in losses]
    logger.trace(f"[ensemble] critic losses {values}")
    return EnsembleUpdate(targets, values)


def q_bar(ens: RewardEnsemble, s: np.ndarray, a: np.ndarray) -> float | np.ndarray:
    """Aggregated online Q: mean of pair minima (MEAN_MIN) or the global minimum (MIN_MIN)."""
    s = np.asarray(s, dtype=np.float64)
    x = np.concatenate([np.atleast_2d(s), np.atleast_2d(a)], axis=1)
    out = aggregate(_critic_values(ens.critics, x), ens.aggregation)
    return out if s.ndim == 2 else float(out[0])


def q_bar_with_action_grad(
    ens: RewardEnsemble, s: np.ndarray, a: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Batched q_bar and its gradient with respect to the action, [B] and [B, act_dim].

    Ties inside a minimum route the gradient to the first critic.
    """
    x = np.concatenate([s, a], axis=1)
    size, act_dim = a.shape
    outputs = [mlp_forward(critic, x) for critic in ens.critics]
    values = np.stack([q[:, 0] for q, _ in outputs])
    q = aggregate(values, ens.aggregation)

    weights = np.zeros_like(values)
    rows = np.arange(size)
    pair_pick = np.where(values[1::2] < values[0::2], 1, 0)
    if ens.aggregation is Aggregation.MIN_MIN:
        weights[np.argmin(values, axis=0), rows] = 1.0
    else:
        for pair in range(ens.m):
            weights[2 * pair + pair_pick[pair], rows] = 1.0 / ens.m

    grad = np.zeros((size, act_dim))
    for i, (critic, (_, tape)) in enumerate(zip(ens.critics, outputs)):
        if not weights[i].any():
            continue
        grads = mlp_backward(critic, tape, weights[i][:, np.newaxis])
        grad += grads.input_grad[:, -act_dim:]
    return q, grad
