# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from typing import Any

import numpy as np

import slsac.plugin

from ._base import Environment, StepResult

NAME = "point_velocity"
MAX_SPEED = 3.0
ACCEL = 0.1
DT = 0.05


class PointVelocityEnv(Environment):
    """A point on a line rewarded for speed and charged a unit cost above a speed limit.

    Observation is ``[x, v]``. Dynamics: ``v' = clip(v + 0.1 a, -3, 3)``, ``x' = x + 0.05 v'``,
    reward ``v'`` and cost ``1`` when ``v' > v_limit``.
    """

    name = NAME
    obs_dim = 2
    act_dim = 1

    def __init__(self, v_limit: float = 1.0, horizon: int = 400, reset_noise: float = 0.05) -> None:
        super().__init__(horizon)
        self.v_limit = v_limit
        self.reset_noise = reset_noise
        self.x = 0.0
        self.v = 0.0

    @property
    def state(self) -> tuple[float, float]:
        return self.x, self.v

    @state.setter
    def state(self, value: tuple[float, float]) -> None:
        x, v = value
        self.x = float(x)
        self.v = float(np.clip(v, -MAX_SPEED, MAX_SPEED))

    def observe(self) -> np.ndarray:
        return np.array([self.x, self.v])

    def reset(self, rng: np.random.Generator) -> np.ndarray:
        self.t = 0
        self.x = 0.0
        self.v = float(rng.uniform(-self.reset_noise, self.reset_noise))
        return self.observe()

    def step(self, a: np.ndarray) -> StepResult:
        accel = float(self._clamp_action(a)[0])
        self.v = float(np.clip(self.v + ACCEL * accel, -MAX_SPEED, MAX_SPEED))
        self.x += DT * self.v
        cost = 1.0 if self.v > self.v_limit else 0.0
        done = self._tick()
        return StepResult(self.observe(), self.v, cost, done)


@slsac.plugin.hookimpl
def create_environment(name: str, settings: dict[str, Any]) -> Environment | None:
    if name != NAME:
        return None
    horizon = int(settings.get("horizon", 0)) or 400
    return PointVelocityEnv(
        v_limit=float(settings.get("v_limit", 1.0)),
        horizon=horizon,
        reset_noise=float(settings.get("reset_noise", 0.05)),
    )


@slsac.plugin.hookimpl
def environment_names() -> list[str]:
    return [NAME]
