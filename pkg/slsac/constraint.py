# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np
from loguru import logger

from slsac.cost import empirical_cvar
from slsac.errors import RejectedInputError
from slsac.verify import tightened_threshold


class SignalMode(str, Enum):
    CVAR = "cvar"
    EXPECTED = "expected"


class EpisodeCostWindow:
    """FIFO of the most recent undiscounted episode cost totals."""

    def __init__(self, capacity: int = 64) -> None:
        if capacity < 1:
            raise RejectedInputError(f"window capacity must be >= 1, got {capacity}")
        self._totals: deque[float] = deque(maxlen=capacity)

    @property
    def capacity(self) -> int:
        return int(self._totals.maxlen or 0)

    def __len__(self) -> int:
        return len(self._totals)

    def totals(self) -> np.ndarray:
        return np.array(self._totals, dtype=np.float64)


def record_cost(window: EpisodeCostWindow, episode_total: float) -> EpisodeCostWindow:
    # pylint: disable-next=protected-access
    window._totals.append(float(episode_total))
    return window


# pylint: disable-next=too-many-instance-attributes
@dataclass
class Multiplier:
    """Lagrange multiplier state.

    ``update_lambda`` is a no-op until ``step >= warmup_general + warmup_multiplier``: the
    multiplier warmup starts when the general (random-action) warmup ends.
    """

    lam: float = 0.0
    eta_lambda: float = 0.01
    beta: float = 25.0
    warmup_general: int = 0
    warmup_multiplier: int = 0
    signal_mode: SignalMode = SignalMode.CVAR
    tighten_margin: bool = False
    margin_delta: float = 0.0

    def __post_init__(self) -> None:
        if self.lam < 0:
            raise RejectedInputError(f"lambda must be >= 0, got {self.lam}")
        if not self.eta_lambda > 0:
            raise RejectedInputError(f"eta_lambda must be > 0, got {self.eta_lambda}")
        self.signal_mode = SignalMode(self.signal_mode)

    @property
    def active_from(self) -> int:
        return self.warmup_general + self.warmup_multiplier

    def threshold(self, epsilon: float) -> float:
        """The cost limit used by the update; tightened by delta / sqrt(epsilon) when enabled."""
        if self.tighten_margin:
            return tightened_threshold(self.beta, self.margin_delta, epsilon)
        return self.beta


def violation_signal(
    window: EpisodeCostWindow,
    epsilon: float,
    beta: float,
    mode: SignalMode | str = SignalMode.CVAR,
) -> float:
    """Empirical CVaR (or mean) of the window minus the limit beta."""
    totals = window.totals()
    if totals.size == 0:
        raise RejectedInputError("violation signal of an empty cost window")
    if SignalMode(mode) is SignalMode.CVAR:
        return empirical_cvar(totals, epsilon) - beta
    return float(np.mean(totals)) - beta


def update_lambda(
    mult: Multiplier, window: EpisodeCostWindow, epsilon: float, step: int
) -> Multiplier:
    """lambda <- max(0, lambda + eta_lambda * signal) once the multiplier warmup is over."""
    if step < mult.active_from:
        return mult
    if len(window) == 0:
        logger.warning(f"[lambda] step {step}: no finished episodes in the cost window, skipping")
        return mult
    signal = violation_signal(window, epsilon, mult.threshold(epsilon), mult.signal_mode)
    mult.lam = max(0.0, mult.lam + mult.eta_lambda * signal)
    return mult
