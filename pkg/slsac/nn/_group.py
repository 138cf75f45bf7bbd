# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Protocol

import numpy as np


class ParamSet(Protocol):
    def tensors(self) -> list[np.ndarray]: ...

    def mark_updated(self) -> None: ...


class GradSet(Protocol):
    def tensors(self) -> list[np.ndarray]: ...


@dataclass
class ParamGroup:
    """Several networks stepped as one parameter set (e.g. trunk, embedding and head)."""

    members: Sequence[ParamSet]

    def tensors(self) -> list[np.ndarray]:
        return [t for member in self.members for t in member.tensors()]

    def mark_updated(self) -> None:
        for member in self.members:
            member.mark_updated()


@dataclass
class GradGroup:
    members: Sequence[GradSet]

    def tensors(self) -> list[np.ndarray]:
        return [t for member in self.members for t in member.tensors()]


class ScalarParam:
    """A single trainable real, such as the log entropy temperature."""

    def __init__(self, value: float) -> None:
        self.data = np.array([float(value)])
        self.version = 0

    @property
    def value(self) -> float:
        return float(self.data[0])

    def tensors(self) -> list[np.ndarray]:
        return [self.data]

    def mark_updated(self) -> None:
        self.version += 1


@dataclass
class ScalarGrad:
    grad: float

    def tensors(self) -> list[np.ndarray]:
        return [np.array([self.grad], dtype=np.float64)]
