# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from ._cvar import (
    CvarMode,
    QuantileCritic,
    cvar_action_grad,
    cvar_forward,
    cvar_from_critic,
    empirical_cvar,
    tail_count,
    tail_fractions,
)
from ._loss import (
    QuantileLossResult,
    cost_critic_loss,
    huber,
    quantile_huber,
    quantile_regression_loss,
)
from ._network import (
    EMBEDDING_DIM,
    QuantileCostCritic,
    QuantileNet,
    QuantileTape,
    cost_quantile_forward,
    quantile_backward,
    quantile_embed,
    quantile_forward,
)

__all__ = [
    "EMBEDDING_DIM",
    "CvarMode",
    "QuantileCostCritic",
    "QuantileCritic",
    "QuantileLossResult",
    "QuantileNet",
    "QuantileTape",
    "cost_critic_loss",
    "cost_quantile_forward",
    "cvar_action_grad",
    "cvar_forward",
    "cvar_from_critic",
    "empirical_cvar",
    "huber",
    "quantile_backward",
    "quantile_embed",
    "quantile_forward",
    "quantile_huber",
    "quantile_regression_loss",
    "tail_count",
    "tail_fractions",
]
