# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from slsac.errors import RejectedInputError, RejectedTapeError


class Activation(str, Enum):
    RELU = "relu"
    IDENTITY = "identity"


@dataclass
class Layer:
    weight: np.ndarray  # [out, in]
    bias: np.ndarray  # [out]
    activation: Activation = Activation.RELU


class MlpParams:
    """Weights and biases of a dense feed-forward network in float64.

    Optimizers mutate the tensors in place and then call ``mark_updated`` so that any
    tape recorded against the old values is rejected by ``mlp_backward``.
    """

    def __init__(self, layers: Sequence[Layer]) -> None:
        if not layers:
            raise RejectedInputError("a network needs at least one layer")
        for i in range(1, len(layers)):
            prev_out = layers[i - 1].weight.shape[0]
            cur_in = layers[i].weight.shape[1]
            if prev_out != cur_in:
                raise RejectedInputError(
                    f"layer {i} expects {cur_in} inputs but layer {i - 1} produces {prev_out}"
                )
        for i, layer in enumerate(layers):
            if layer.bias.shape != (layer.weight.shape[0],):
                raise RejectedInputError(
                    f"layer {i} bias shape {layer.bias.shape} does not match weight {layer.weight.shape}"
                )
        self.layers = list(layers)
        self.version = 0

    @classmethod
    def init(
        cls,
        sizes: Sequence[int],
        rng: np.random.Generator,
        output_activation: Activation = Activation.IDENTITY,
    ) -> "MlpParams":
        """Uniform +-1/sqrt(fan_in) initialization for weights and biases.

        Args:
            sizes (Sequence[int]): [input_dim, hidden..., output_dim].
            rng (np.random.Generator): Source of the initial values.
            output_activation (Activation): Activation of the last layer; hidden layers use ReLU.
        """
        if len(sizes) < 2 or any(int(n) <= 0 for n in sizes):
            raise RejectedInputError(f"invalid layer sizes {list(sizes)}")
        layers = []
        for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            bound = 1.0 / np.sqrt(fan_in)
            last = i == len(sizes) - 2
            layers.append(
                Layer(
                    weight=rng.uniform(-bound, bound, size=(fan_out, fan_in)),
                    bias=rng.uniform(-bound, bound, size=fan_out),
                    activation=output_activation if last else Activation.RELU,
                )
            )
        return cls(layers)

    @classmethod
    def zeros(
        cls, sizes: Sequence[int], output_activation: Activation = Activation.IDENTITY
    ) -> "MlpParams":
        layers = []
        for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            last = i == len(sizes) - 2
            layers.append(
                Layer(
                    np.zeros((fan_out, fan_in)),
                    np.zeros(fan_out),
                    output_activation if last else Activation.RELU,
                )
            )
        return cls(layers)

    @property
    def input_dim(self) -> int:
        return self.layers[0].weight.shape[1]

    @property
    def output_dim(self) -> int:
        return self.layers[-1].weight.shape[0]

    @property
    def sizes(self) -> list[int]:
        return [self.input_dim] + [layer.weight.shape[0] for layer in self.layers]

    def tensors(self) -> list[np.ndarray]:
        out = []
        for layer in self.layers:
            out.extend((layer.weight, layer.bias))
        return out

    def mark_updated(self) -> None:
        self.version += 1

    def copy(self) -> "MlpParams":
        return MlpParams(
            [Layer(lay.weight.copy(), lay.bias.copy(), lay.activation) for lay in self.layers]
        )


@dataclass
class MlpGrads:
    """Gradients shaped like an MlpParams, plus the gradient with respect to the input batch."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    input_grad: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def tensors(self) -> list[np.ndarray]:
        out = []
        for w, b in zip(self.weights, self.biases):
            out.extend((w, b))
        return out


@dataclass(frozen=True)
class Tape:
    params_id: int
    version: int
    inputs: list[np.ndarray]
    preacts: list[np.ndarray]
    batched: bool


def _as_batch(x: np.ndarray, width: int, what: str) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim not in (1, 2) or x.shape[-1] != width:
        raise RejectedInputError(f"{what} has shape {x.shape}, expected last dimension {width}")
    if x.ndim == 1:
        return x[np.newaxis, :], False
    return x, True


def mlp_forward(params: MlpParams, x: np.ndarray) -> tuple[np.ndarray, Tape]:
    """Evaluate the network on one input vector or a [batch, input_dim] matrix."""
    h, batched = _as_batch(x, params.input_dim, "input")
    inputs, preacts = [], []
    for layer in params.layers:
        inputs.append(h)
        z = h @ layer.weight.T + layer.bias
        preacts.append(z)
        h = np.maximum(z, 0.0) if layer.activation is Activation.RELU else z
    tape = Tape(id(params), params.version, inputs, preacts, batched)
    return (h if batched else h[0]), tape


def mlp_backward(params: MlpParams, tape: Tape, output_grad: np.ndarray) -> MlpGrads:
    """Reverse pass: gradients of sum(output * output_grad) with respect to every parameter.

    Gradients are summed over the batch. ``input_grad`` has the shape of the forward input.
    """
    if tape.params_id != id(params) or tape.version != params.version:
        raise RejectedTapeError("tape was recorded against different or since-updated parameters")
    g = np.asarray(output_grad, dtype=np.float64)
    expected = tape.preacts[-1].shape if tape.batched else (params.output_dim,)
    if g.shape != expected:
        raise RejectedInputError(f"output_grad has shape {g.shape}, expected {expected}")
    if not tape.batched:
        g = g[np.newaxis, :]

    n = len(params.layers)
    weights: list[np.ndarray] = [np.zeros(0)] * n
    biases: list[np.ndarray] = [np.zeros(0)] * n
    for i in reversed(range(n)):
        layer = params.layers[i]
        if layer.activation is Activation.RELU:
            # subgradient at 0 is 0
            g = g * (tape.preacts[i] > 0.0)
        weights[i] = g.T @ tape.inputs[i]
        biases[i] = g.sum(axis=0)
        g = g @ layer.weight
    return MlpGrads(weights, biases, g if tape.batched else g[0])


def soft_update(online, target, tau_soft: float):
    """Polyak averaging in place: target <- (1 - tau_soft) * target + tau_soft * online.

    Works on any pair of parameter sets exposing ``tensors()`` and ``mark_updated()``.
    """
    if not 0.0 <= tau_soft <= 1.0:
        raise RejectedInputError(f"tau_soft must be in [0, 1], got {tau_soft}")
    src, dst = online.tensors(), target.tensors()
    if len(src) != len(dst) or any(s.shape != d.shape for s, d in zip(src, dst)):
        raise RejectedInputError("soft_update needs shape-identical parameter sets")
    for s, d in zip(src, dst):
        d *= 1.0 - tau_soft
        d += tau_soft * s
    target.mark_updated()
    return target
