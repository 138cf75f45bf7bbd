# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np

from slsac.errors import RejectedInputError
from slsac.runtypes import Transition, TransitionBatch


class ReplayBuffer:
    """Fixed-capacity ring of transitions stored column-wise."""

    def __init__(self, capacity: int, obs_dim: int, act_dim: int) -> None:
        if capacity < 1:
            raise RejectedInputError(f"buffer capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.obs_dim = obs_dim
        self.act_dim = act_dim
        self.s = np.zeros((capacity, obs_dim))
        self.a = np.zeros((capacity, act_dim))
        self.r = np.zeros(capacity)
        self.c = np.zeros(capacity)
        self.s_next = np.zeros((capacity, obs_dim))
        self.d = np.zeros(capacity)
        self.cursor = 0
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def push(self, t: Transition) -> None:
        if t.c < 0:
            raise RejectedInputError(f"transition cost must be >= 0, got {t.c}")
        i = self.cursor
        self.s[i] = t.s
        self.a[i] = t.a
        self.r[i] = t.r
        self.c[i] = t.c
        self.s_next[i] = t.s_next
        self.d[i] = float(t.d)
        self.cursor = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> TransitionBatch:
        if batch_size < 1:
            raise RejectedInputError(f"batch size must be >= 1, got {batch_size}")
        if batch_size > self.size:
            raise RejectedInputError(
                f"cannot sample {batch_size} transitions from a buffer holding {self.size}"
            )
        idx = rng.choice(self.size, size=batch_size, replace=False)
        return TransitionBatch(
            s=self.s[idx].copy(),
            a=self.a[idx].copy(),
            r=self.r[idx].copy(),
            c=self.c[idx].copy(),
            s_next=self.s_next[idx].copy(),
            d=self.d[idx].copy(),
        )


def buffer_push(buf: ReplayBuffer, t: Transition) -> ReplayBuffer:
    buf.push(t)
    return buf


def buffer_sample(buf: ReplayBuffer, batch_size: int, rng: np.random.Generator) -> TransitionBatch:
    return buf.sample(batch_size, rng)
