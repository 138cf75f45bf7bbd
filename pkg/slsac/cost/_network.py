# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from slsac.errors import RejectedInputError
from slsac.nn import (
    Activation,
    GradGroup,
    MlpGrads,
    MlpParams,
    Tape,
    mlp_backward,
    mlp_forward,
)

EMBEDDING_DIM = 64


def quantile_embed(tau: float | np.ndarray, dim: int = EMBEDDING_DIM) -> np.ndarray:
    """Cosine features cos(pi * i * tau) for i = 0..dim-1, along a new last axis."""
    tau = np.asarray(tau, dtype=np.float64)
    if not np.all(np.isfinite(tau)) or np.any(tau < 0.0) or np.any(tau > 1.0):
        raise RejectedInputError("quantile fractions must lie in [0, 1]")
    return np.cos(np.pi * np.arange(dim) * tau[..., np.newaxis])


@dataclass
class QuantileNet:
    """Implicit quantile network: head(trunk(s, a) * relu(W cos(pi i tau) + b))."""

    trunk: MlpParams
    embed: MlpParams
    head: MlpParams

    @classmethod
    def init(
        cls,
        obs_dim: int,
        act_dim: int,
        hidden: Sequence[int],
        rng: np.random.Generator,
        embedding_dim: int = EMBEDDING_DIM,
    ) -> "QuantileNet":
        width = int(hidden[-1])
        return cls(
            trunk=MlpParams.init([obs_dim + act_dim, *hidden], rng, Activation.RELU),
            embed=MlpParams.init([embedding_dim, width], rng, Activation.RELU),
            head=MlpParams.init([width, width, 1], rng),
        )

    def tensors(self) -> list[np.ndarray]:
        return self.trunk.tensors() + self.embed.tensors() + self.head.tensors()

    def mark_updated(self) -> None:
        for part in (self.trunk, self.embed, self.head):
            part.mark_updated()

    def copy(self) -> "QuantileNet":
        return QuantileNet(self.trunk.copy(), self.embed.copy(), self.head.copy())


class QuantileCostCritic:
    """Online and target quantile networks for the discounted cost return."""

    def __init__(self, online: QuantileNet, target: QuantileNet | None = None) -> None:
        self.online = online
        self.target = target if target is not None else online.copy()

    @classmethod
    def init(
        cls,
        obs_dim: int,
        act_dim: int,
        hidden: Sequence[int],
        rng: np.random.Generator,
        embedding_dim: int = EMBEDDING_DIM,
    ) -> "QuantileCostCritic":
        return cls(QuantileNet.init(obs_dim, act_dim, hidden, rng, embedding_dim))

    def quantile_values(self, s: np.ndarray, a: np.ndarray, taus: np.ndarray) -> np.ndarray:
        return cost_quantile_forward(self, s, a, taus)


@dataclass(frozen=True)
class QuantileTape:
    trunk: Tape
    embed: Tape
    head: Tape
    feat_rep: np.ndarray
    phi: np.ndarray
    batch: int
    n_taus: int
    batched: bool


def _as_inputs(
    net: QuantileNet, s: np.ndarray, a: np.ndarray, taus: np.ndarray
) -> tuple[np.ndarray, np.ndarray, bool]:
    s = np.asarray(s, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    batched = s.ndim == 2
    s2 = np.atleast_2d(s)
    a2 = np.atleast_2d(a)
    if s2.shape[0] != a2.shape[0] or s2.ndim != 2 or a2.ndim != 2:
        raise RejectedInputError(f"state batch {s.shape} and action batch {a.shape} do not align")
    x = np.concatenate([s2, a2], axis=1)
    if x.shape[1] != net.trunk.input_dim:
        raise RejectedInputError(
            f"state+action width {x.shape[1]} does not match critic input {net.trunk.input_dim}"
        )
    taus = np.asarray(taus, dtype=np.float64)
    if taus.ndim == 1:
        taus = np.broadcast_to(taus, (x.shape[0], taus.shape[0]))
    elif taus.ndim != 2 or taus.shape[0] != x.shape[0]:
        raise RejectedInputError(f"taus of shape {taus.shape} do not match batch {x.shape[0]}")
    return x, taus, batched


def quantile_forward(
    net: QuantileNet, s: np.ndarray, a: np.ndarray, taus: np.ndarray
) -> tuple[np.ndarray, QuantileTape]:
    """Quantile values for each (state, action) row and fraction: [B, N], or [N] unbatched."""
    x, taus, batched = _as_inputs(net, s, a, taus)
    b, n = taus.shape
    feat, trunk_tape = mlp_forward(net.trunk, x)
    dim = net.embed.input_dim
    phi, embed_tape = mlp_forward(net.embed, quantile_embed(taus, dim).reshape(b * n, dim))
    feat_rep = np.repeat(feat, n, axis=0)
    out, head_tape = mlp_forward(net.head, feat_rep * phi)
    values = out[:, 0].reshape(b, n)
    tape = QuantileTape(trunk_tape, embed_tape, head_tape, feat_rep, phi, b, n, batched)
    return (values if batched else values[0]), tape


def quantile_backward(
    net: QuantileNet, tape: QuantileTape, out_grad: np.ndarray
) -> tuple[GradGroup, np.ndarray]:
    """Parameter gradients (trunk, embed, head order) and the gradient on the state+action input."""
    g = np.asarray(out_grad, dtype=np.float64).reshape(tape.batch * tape.n_taus, 1)
    head_g: MlpGrads = mlp_backward(net.head, tape.head, g)
    d_joint = head_g.input_grad
    width = d_joint.shape[1]
    d_feat = (d_joint * tape.phi).reshape(tape.batch, tape.n_taus, width).sum(axis=1)
    embed_g = mlp_backward(net.embed, tape.embed, d_joint * tape.feat_rep)
    trunk_g = mlp_backward(net.trunk, tape.trunk, d_feat)
    input_grad = trunk_g.input_grad
    return GradGroup([trunk_g, embed_g, head_g]), (input_grad if tape.batched else input_grad[0])


def cost_quantile_forward(
    critic: QuantileCostCritic, s: np.ndarray, a: np.ndarray, taus: np.ndarray
) -> np.ndarray:
    values, _ = quantile_forward(critic.online, s, a, taus)
    return values
