# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from ._checkpoint import load_arrays, save_arrays
from ._group import GradGroup, GradSet, ParamGroup, ParamSet, ScalarGrad, ScalarParam
from ._mlp import (
    Activation,
    Layer,
    MlpGrads,
    MlpParams,
    Tape,
    mlp_backward,
    mlp_forward,
    soft_update,
)

__all__ = [
    "Activation",
    "GradGroup",
    "GradSet",
    "Layer",
    "MlpGrads",
    "MlpParams",
    "ParamGroup",
    "ParamSet",
    "ScalarGrad",
    "ScalarParam",
    "Tape",
    "load_arrays",
    "mlp_backward",
    "mlp_forward",
    "save_arrays",
    "soft_update",
]
