# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from slsac.errors import RejectedInputError
from slsac.nn import ParamSet


class LangevinVariant(str, Enum):
    VANILLA_SGLD = "vanilla_sgld"
    PSGLD = "psgld"
    FULL_ASGLD = "full_asgld"
    SLSAC_ASGLD = "slsac_asgld"


class ClipMode(str, Enum):
    ELEMENTWISE = "elementwise"
    NORM = "norm"


ADAMW = "adamw"
OPTIMIZER_CHOICES = (ADAMW, *(v.value for v in LangevinVariant))


def parse_optimizer(name: str) -> LangevinVariant | None:
    """Map an optimizer name to a Langevin variant; ``None`` means AdamW."""
    if name == ADAMW:
        return None
    try:
        return LangevinVariant(name)
    except ValueError as err:
        raise RejectedInputError(
            f"unknown optimizer {name!r}; expected one of {', '.join(OPTIMIZER_CHOICES)}"
        ) from err


# pylint: disable-next=too-many-instance-attributes
@dataclass
class OptimizerState:
    """Moment buffers and hyperparameters for one parameter set.

    ``m`` and ``v`` are created lazily with the shapes of the parameters on first use.
    """

    lr: float = 3e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    a: float = 0.1
    t_inv: float = 1e-8
    weight_decay: float = 0.0
    clip_c: float = 0.7
    clip_mode: ClipMode = ClipMode.ELEMENTWISE
    m: list[np.ndarray] = field(default_factory=list)
    v: list[np.ndarray] = field(default_factory=list)
    step_count: int = 0

    def __post_init__(self) -> None:
        problems = []
        if not self.lr > 0:
            problems.append(f"lr must be > 0, got {self.lr}")
        if not self.t_inv >= 0:
            problems.append(f"t_inv must be >= 0, got {self.t_inv}")
        if not self.clip_c > 0:
            problems.append(f"clip_c must be > 0, got {self.clip_c}")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            problems.append(f"moment decays must be in [0, 1), got {self.beta1}, {self.beta2}")
        if not self.eps > 0:
            problems.append(f"eps must be > 0, got {self.eps}")
        if problems:
            raise RejectedInputError("; ".join(problems))
        self.clip_mode = ClipMode(self.clip_mode)

    def ensure_moments(self, params: ParamSet) -> None:
        tensors = params.tensors()
        if not self.m:
            self.m = [np.zeros_like(t) for t in tensors]
            self.v = [np.zeros_like(t) for t in tensors]
        elif len(self.m) != len(tensors) or any(
            m.shape != t.shape for m, t in zip(self.m, tensors)
        ):
            raise RejectedInputError("optimizer moments do not match the parameter shapes")

    def hyper_copy(self) -> "OptimizerState":
        """Fresh state (no moments) with the same hyperparameters."""
        return OptimizerState(
            lr=self.lr,
            beta1=self.beta1,
            beta2=self.beta2,
            eps=self.eps,
            a=self.a,
            t_inv=self.t_inv,
            weight_decay=self.weight_decay,
            clip_c=self.clip_c,
            clip_mode=self.clip_mode,
        )
