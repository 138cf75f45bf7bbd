# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from enum import Enum
from typing import Any

import numpy as np

import slsac.plugin
from slsac.errors import RejectedInputError

from ._base import Environment, StepResult

NAME = "hazard_nav"
ARENA = 2.0
SPEED = 0.1
GOAL_RADIUS = 0.3
GOAL_BONUS = 5.0
PLACEMENT_TRIES = 10_000


class HazardCost(str, Enum):
    INDICATOR = "indicator"
    DEPTH = "depth"


# pylint: disable-next=too-many-instance-attributes
class HazardNavEnv(Environment):
    """2-D goal reaching in ``[-2, 2]^2`` around circular hazards.

    Hazard layout is fixed by ``seed``; start and goal positions come from the generator handed to
    ``reset``. Observation is the position, the goal offset, then each hazard center offset.
    """

    name = NAME
    act_dim = 2

    # pylint: disable-next=too-many-arguments,too-many-positional-arguments
    def __init__(
        self,
        hazards: int = 3,
        horizon: int = 500,
        seed: int = 0,
        hazard_cost: HazardCost | str = HazardCost.INDICATOR,
        goal_radius: float = GOAL_RADIUS,
    ) -> None:
        super().__init__(horizon)
        if hazards < 0:
            raise RejectedInputError(f"hazard count must be >= 0, got {hazards}")
        self.hazard_cost = HazardCost(hazard_cost)
        self.goal_radius = goal_radius
        layout = np.random.default_rng(seed)
        self.centers = layout.uniform(-1.5, 1.5, size=(hazards, 2))
        self.radii = layout.uniform(0.2, 0.5, size=hazards)
        self.obs_dim = 4 + 2 * hazards
        self.p = np.zeros(2)
        self.g = np.zeros(2)
        self._rng = np.random.default_rng(seed)

    def hazard_depths(self, p: np.ndarray) -> np.ndarray:
        """Penetration depth into each hazard, zero when outside."""
        if self.radii.size == 0:
            return np.zeros(0)
        dist = np.linalg.norm(self.centers - p, axis=1)
        return np.maximum(self.radii - dist, 0.0)

    def inside_hazard(self, p: np.ndarray) -> bool:
        return bool(np.any(self.hazard_depths(p) > 0.0))

    def _free_point(
        self, rng: np.random.Generator, away_from: np.ndarray | None = None
    ) -> np.ndarray:
        for _ in range(PLACEMENT_TRIES):
            p = rng.uniform(-ARENA, ARENA, size=2)
            if self.inside_hazard(p):
                continue
            if away_from is not None and np.linalg.norm(p - away_from) <= self.goal_radius:
                continue
            return p
        raise RejectedInputError(
            f"no hazard-free point found in {PLACEMENT_TRIES} draws; the hazards cover the arena"
        )

    def observe(self) -> np.ndarray:
        offsets = (self.centers - self.p).ravel()
        return np.concatenate([self.p, self.g - self.p, offsets])

    def reset(self, rng: np.random.Generator) -> np.ndarray:
        self.t = 0
        self._rng = rng
        self.p = self._free_point(rng)
        self.g = self._free_point(rng, away_from=self.p)
        return self.observe()

    def step(self, a: np.ndarray) -> StepResult:
        a = self._clamp_action(a)
        before = float(np.linalg.norm(self.p - self.g))
        self.p = np.clip(self.p + SPEED * a, -ARENA, ARENA)
        after = float(np.linalg.norm(self.p - self.g))
        reward = before - after
        if after < self.goal_radius:
            reward += GOAL_BONUS
            self.g = self._free_point(self._rng, away_from=self.p)
        depths = self.hazard_depths(self.p)
        if self.hazard_cost is HazardCost.DEPTH:
            cost = float(depths.max()) if depths.size else 0.0
        else:
            cost = 1.0 if np.any(depths > 0.0) else 0.0
        done = self._tick()
        return StepResult(self.observe(), reward, cost, done)


@slsac.plugin.hookimpl
def create_environment(name: str, settings: dict[str, Any]) -> Environment | None:
    if name != NAME:
        return None
    return HazardNavEnv(
        hazards=int(settings.get("hazards", 3)),
        horizon=int(settings.get("horizon", 0)) or 500,
        seed=int(settings.get("seed", 0)),
        hazard_cost=settings.get("hazard_cost", HazardCost.INDICATOR.value),
    )


@slsac.plugin.hookimpl
def environment_names() -> list[str]:
    return [NAME]
