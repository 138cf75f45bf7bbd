# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass, field

from dataclasses_json import dataclass_json


@dataclass_json
@dataclass
class CheckReport:
    """Outcome of one numerical check.

    ``worst_slack`` is the smallest (allowed - observed) margin over all trials; a negative
    value means at least one violation.
    """

    name: str
    passed: bool
    trials: int = 0
    violations: int = 0
    worst_slack: float = 0.0
    details: dict[str, float] = field(default_factory=dict)


@dataclass_json
@dataclass
class VerificationReport:
    seed: int
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_names(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]
