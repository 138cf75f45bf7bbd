# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from ._report import CheckReport, VerificationReport
from ._transition import Transition, TransitionBatch

__all__ = ["CheckReport", "Transition", "TransitionBatch", "VerificationReport"]
