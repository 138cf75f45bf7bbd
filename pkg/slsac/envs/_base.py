# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from abc import ABC, abstractmethod
from typing import NamedTuple

import numpy as np


class StepResult(NamedTuple):
    s_next: np.ndarray
    r: float
    c: float
    d: bool


class Environment(ABC):
    """A seedable episodic CMDP with actions in [-1, 1]^act_dim."""

    name: str = ""
    obs_dim: int = 0
    act_dim: int = 0

    def __init__(self, horizon: int) -> None:
        self.horizon = horizon
        self.t = 0

    @abstractmethod
    def reset(self, rng: np.random.Generator) -> np.ndarray:
        """Start a new episode and return the first observation."""

    @abstractmethod
    def step(self, a: np.ndarray) -> StepResult:
        """Apply an action (clamped into bounds) and advance one step."""

    def _clamp_action(self, a: np.ndarray | float) -> np.ndarray:
        a = np.asarray(a, dtype=np.float64).reshape(self.act_dim)
        return np.clip(a, -1.0, 1.0)

    def _tick(self) -> bool:
        self.t += 1
        return self.t >= self.horizon


def env_reset(env: Environment, rng: np.random.Generator) -> np.ndarray:
    return env.reset(rng)


def env_step(env: Environment, a: np.ndarray | float) -> StepResult:
    return env.step(np.asarray(a, dtype=np.float64))
