# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import math
from enum import Enum
from typing import Protocol

import numpy as np

from slsac.errors import RejectedInputError

from ._network import QuantileNet, QuantileTape, quantile_backward, quantile_forward


class CvarMode(str, Enum):
    STRATIFIED = "stratified"
    SAMPLED = "sampled"


class QuantileCritic(Protocol):
    def quantile_values(self, s: np.ndarray, a: np.ndarray, taus: np.ndarray) -> np.ndarray: ...


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon <= 1.0:
        raise RejectedInputError(f"epsilon must be in (0, 1], got {epsilon}")


def tail_fractions(
    epsilon: float,
    n: int,
    rng: np.random.Generator | None = None,
    mode: CvarMode | str = CvarMode.STRATIFIED,
) -> np.ndarray:
    """Fractions in [1 - epsilon, 1]: midpoints of n equal strata, or n uniform draws."""
    _check_epsilon(epsilon)
    if n < 1:
        raise RejectedInputError(f"need at least one quantile fraction, got {n}")
    if CvarMode(mode) is CvarMode.STRATIFIED:
        return 1.0 - epsilon + epsilon * (np.arange(1, n + 1) - 0.5) / n
    if rng is None:
        raise RejectedInputError("sampled CVaR fractions need a generator")
    return rng.uniform(1.0 - epsilon, 1.0, size=n)


def cvar_from_critic(
    critic: QuantileCritic,
    s: np.ndarray,
    a: np.ndarray,
    epsilon: float,
    n: int = 32,
    rng: np.random.Generator | None = None,
    mode: CvarMode | str = CvarMode.STRATIFIED,
) -> float | np.ndarray:
    """Average of the critic's quantiles over the upper epsilon tail.

    Returns a float for a single (s, a) and a [B] array for batched inputs.
    """
    taus = tail_fractions(epsilon, n, rng, mode)
    values = np.asarray(critic.quantile_values(s, a, taus), dtype=np.float64)
    out = values.mean(axis=-1)
    return float(out) if out.ndim == 0 else out


def cvar_forward(
    net: QuantileNet,
    s: np.ndarray,
    a: np.ndarray,
    epsilon: float,
    n: int = 32,
    rng: np.random.Generator | None = None,
    mode: CvarMode | str = CvarMode.STRATIFIED,
) -> tuple[np.ndarray, QuantileTape]:
    """Batched tail average that keeps the tape, for differentiating through the action."""
    taus = tail_fractions(epsilon, n, rng, mode)
    values, tape = quantile_forward(net, np.atleast_2d(s), np.atleast_2d(a), taus)
    return values.mean(axis=1), tape


def cvar_action_grad(
    net: QuantileNet, tape: QuantileTape, upstream: np.ndarray, act_dim: int
) -> np.ndarray:
    """d(sum(upstream * cvar)) / d(action), shape [B, act_dim]."""
    upstream = np.asarray(upstream, dtype=np.float64)
    out_grad = np.repeat(upstream[:, np.newaxis] / tape.n_taus, tape.n_taus, axis=1)
    _, input_grad = quantile_backward(net, tape, out_grad)
    return input_grad[:, -act_dim:]


def tail_count(n: int, epsilon: float) -> int:
    """k = ceil(epsilon * n), at least 1; rounded first so 0.1 * 30 counts as 3."""
    return max(1, min(n, math.ceil(round(epsilon * n, 9))))


def empirical_cvar(samples: np.ndarray, epsilon: float) -> float:
    """Mean of the largest ceil(epsilon * N) samples."""
    _check_epsilon(epsilon)
    samples = np.asarray(samples, dtype=np.float64).ravel()
    if samples.size == 0:
        raise RejectedInputError("empirical CVaR of an empty sample set")
    k = tail_count(samples.size, epsilon)
    return float(np.mean(np.sort(samples)[-k:]))
