# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from ._base import Environment, StepResult, env_reset, env_step
from ._buffer import ReplayBuffer, buffer_push, buffer_sample
from .hazard_nav import HazardCost, HazardNavEnv
from .point_velocity import PointVelocityEnv

__all__ = [
    "Environment",
    "HazardCost",
    "HazardNavEnv",
    "PointVelocityEnv",
    "ReplayBuffer",
    "StepResult",
    "buffer_push",
    "buffer_sample",
    "env_reset",
    "env_step",
]
