# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass

import numpy as np

from slsac.errors import RejectedInputError


@dataclass(frozen=True)
class PiecewiseQuantileFn:
    """Monotone piecewise-linear quantile function on [0, 1].

    ``knots`` run strictly upward from 0 to 1; ``values`` are nondecreasing.
    """

    knots: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        knots = np.asarray(self.knots, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if knots.ndim != 1 or knots.shape != values.shape or knots.size < 2:
            raise RejectedInputError("knots and values must be matching vectors of length >= 2")
        if knots[0] != 0.0 or knots[-1] != 1.0 or np.any(np.diff(knots) <= 0):
            raise RejectedInputError("knots must increase strictly from 0 to 1")
        if np.any(np.diff(values) < 0) or not np.all(np.isfinite(values)):
            raise RejectedInputError("quantile values must be finite and nondecreasing")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, c: float) -> "PiecewiseQuantileFn":
        return cls(np.array([0.0, 1.0]), np.array([c, c]))

    @classmethod
    def random(
        cls, rng: np.random.Generator, n_knots: int = 8, scale: float = 1.0, offset: float = 0.0
    ) -> "PiecewiseQuantileFn":
        """Random interior knots and nonnegative exponential increments."""
        interior = np.sort(rng.uniform(0.0, 1.0, size=max(0, n_knots - 2)))
        knots = np.unique(np.concatenate([[0.0], interior, [1.0]]))
        steps = rng.exponential(scale, size=knots.size - 1)
        values = offset + np.concatenate([[0.0], np.cumsum(steps)])
        return cls(knots, values)

    def __call__(self, tau: float | np.ndarray) -> float | np.ndarray:
        out = np.interp(tau, self.knots, self.values)
        return float(out) if np.ndim(out) == 0 else out

    def integral(self, lo: float, hi: float) -> float:
        """Exact integral over [lo, hi] (trapezoids are exact on linear pieces)."""
        if not 0.0 <= lo <= hi <= 1.0:
            raise RejectedInputError(f"integration range [{lo}, {hi}] is outside [0, 1]")
        inner = self.knots[(self.knots > lo) & (self.knots < hi)]
        pts = np.concatenate([[lo], inner, [hi]])
        vals = np.interp(pts, self.knots, self.values)
        return float(np.sum(0.5 * (vals[1:] + vals[:-1]) * np.diff(pts)))


def analytic_cvar(q: PiecewiseQuantileFn, epsilon: float) -> float:
    """(1 / epsilon) * integral of q over [1 - epsilon, 1]."""
    if not 0.0 < epsilon <= 1.0:
        raise RejectedInputError(f"epsilon must be in (0, 1], got {epsilon}")
    return q.integral(max(0.0, 1.0 - epsilon), 1.0) / epsilon


def squared_distance(q1: PiecewiseQuantileFn, q2: PiecewiseQuantileFn) -> float:
    """Exact integral over [0, 1] of (q1 - q2)^2.

    On each merged segment the difference is linear, d(t) from d0 to d1, so the piece
    integrates to h * (d0^2 + d0 * d1 + d1^2) / 3.
    """
    pts = np.union1d(q1.knots, q2.knots)
    diff = np.interp(pts, q1.knots, q1.values) - np.interp(pts, q2.knots, q2.values)
    d0, d1 = diff[:-1], diff[1:]
    return float(np.sum(np.diff(pts) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0))
