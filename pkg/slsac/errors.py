# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT


class RejectedInputError(ValueError):
    """An input had the wrong shape, dimension, or domain."""


class RejectedTapeError(ValueError):
    """A forward tape does not belong to the parameters it was handed back with."""


class RejectedStepError(ArithmeticError):
    """An optimizer was given non-finite gradients; its state was left untouched."""


class InfeasibleMarginError(ValueError):
    """A tightened cost threshold would be non-positive."""


class ConfigError(ValueError):
    """One or more configuration keys are unknown or hold invalid values.

    Attributes:
        problems (list[str]): Every problem found, in the order they were detected.
    """

    def __init__(self, problems: list[str]) -> None:
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))

    def __reduce__(self):
        return (type(self), (self.problems,))


class NumericalAbortError(RuntimeError):
    """A training loss became non-finite.

    Attributes:
        step (int): Environment step at which the loss was computed.
        loss_name (str): Which loss went bad.
        value (float): The offending value.
    """

    def __init__(self, step: int, loss_name: str, value: float) -> None:
        self.step = step
        self.loss_name = loss_name
        self.value = value
        super().__init__(f"{loss_name} loss is {value} at step {step}")

    def __reduce__(self):
        return (type(self), (self.step, self.loss_name, self.value))
