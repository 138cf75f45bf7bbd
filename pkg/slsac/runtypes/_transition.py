# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Transition:
    s: np.ndarray
    a: np.ndarray
    r: float
    c: float
    s_next: np.ndarray
    d: bool


@dataclass(frozen=True)
class TransitionBatch:
    """Column-stacked transitions: ``s`` and ``s_next`` are [B, obs_dim], ``a`` is [B, act_dim]."""

    s: np.ndarray
    a: np.ndarray
    r: np.ndarray
    c: np.ndarray
    s_next: np.ndarray
    d: np.ndarray

    def __len__(self) -> int:
        return int(self.r.shape[0])

    @classmethod
    def from_transitions(cls, transitions: list[Transition]) -> "TransitionBatch":
        return cls(
            s=np.array([t.s for t in transitions], dtype=np.float64),
            a=np.array([t.a for t in transitions], dtype=np.float64),
            r=np.array([t.r for t in transitions], dtype=np.float64),
            c=np.array([t.c for t in transitions], dtype=np.float64),
            s_next=np.array([t.s_next for t in transitions], dtype=np.float64),
            d=np.array([float(t.d) for t in transitions], dtype=np.float64),
        )
