# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from ._state import (
    ADAMW,
    OPTIMIZER_CHOICES,
    ClipMode,
    LangevinVariant,
    OptimizerState,
    parse_optimizer,
)
from ._steps import adamw_step, clip_combined, clip_global_norm, langevin_step, optimizer_step

__all__ = [
    "ADAMW",
    "OPTIMIZER_CHOICES",
    "ClipMode",
    "LangevinVariant",
    "OptimizerState",
    "adamw_step",
    "clip_combined",
    "clip_global_norm",
    "langevin_step",
    "optimizer_step",
    "parse_optimizer",
]
