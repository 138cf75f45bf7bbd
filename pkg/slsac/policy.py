# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from slsac.cost import CvarMode, QuantileCostCritic, cvar_action_grad, cvar_forward
from slsac.ensemble import RewardEnsemble, q_bar_with_action_grad
from slsac.errors import RejectedInputError
from slsac.nn import MlpGrads, MlpParams, ScalarGrad, ScalarParam, mlp_backward, mlp_forward
from slsac.optim import OptimizerState, adamw_step
from slsac.runtypes import TransitionBatch

LOG_STD_MIN = -20.0
LOG_STD_MAX = 2.0
SQUASH_EPS = 1e-6
_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)
_ACTION_BOUND = np.nextafter(1.0, 0.0)


class GaussianPolicy:
    """Tanh-squashed diagonal Gaussian policy with a target copy and an entropy temperature.

    The trunk maps a state to [mean, raw log_std]; log_std is clamped to [-20, 2].
    """

    def __init__(
        self,
        trunk: MlpParams,
        alpha: float = 0.2,
        alpha_auto: bool = True,
        target_entropy: float | None = None,
        alpha_lr: float = 3e-4,
        target: MlpParams | None = None,
    ) -> None:
        if trunk.output_dim % 2:
            raise RejectedInputError("policy trunk must output a mean and a log_std per action")
        if not alpha > 0:
            raise RejectedInputError(f"alpha must be > 0, got {alpha}")
        self.trunk = trunk
        self.target = target if target is not None else trunk.copy()
        self.alpha_auto = alpha_auto
        self.log_alpha = ScalarParam(np.log(alpha))
        self.alpha_state = OptimizerState(lr=alpha_lr)
        self.target_entropy = (
            float(-self.act_dim) if target_entropy is None else float(target_entropy)
        )

    @classmethod
    def init(
        cls,
        obs_dim: int,
        act_dim: int,
        hidden: Sequence[int],
        rng: np.random.Generator,
        **kwargs,
    ) -> "GaussianPolicy":
        return cls(MlpParams.init([obs_dim, *hidden, 2 * act_dim], rng), **kwargs)

    @property
    def obs_dim(self) -> int:
        return self.trunk.input_dim

    @property
    def act_dim(self) -> int:
        return self.trunk.output_dim // 2

    @property
    def alpha(self) -> float:
        return float(np.exp(self.log_alpha.value))

    def sample(
        self,
        s: np.ndarray,
        rng: np.random.Generator,
        deterministic: bool = False,
        use_target: bool = False,
    ) -> tuple[np.ndarray, np.ndarray | float | None]:
        return sample_action(self, s, rng, deterministic=deterministic, use_target=use_target)

    def act(self, s: np.ndarray) -> np.ndarray:
        """Deterministic action, as used by evaluation rollouts."""
        a, _ = sample_action(self, s, None, deterministic=True)
        return a


@dataclass(frozen=True)
class _Draw:
    action: np.ndarray
    log_prob: np.ndarray
    pre_tanh: np.ndarray
    std: np.ndarray
    noise: np.ndarray
    raw_log_std: np.ndarray


def _draw(out: np.ndarray, act_dim: int, noise: np.ndarray) -> _Draw:
    mean = out[:, :act_dim]
    raw_log_std = out[:, act_dim:]
    log_std = np.clip(raw_log_std, LOG_STD_MIN, LOG_STD_MAX)
    std = np.exp(log_std)
    u = mean + std * noise
    a = np.clip(np.tanh(u), -_ACTION_BOUND, _ACTION_BOUND)
    gauss = -0.5 * noise * noise - log_std - _HALF_LOG_2PI
    log_prob = gauss.sum(axis=1) - np.log(1.0 - a * a + SQUASH_EPS).sum(axis=1)
    return _Draw(a, log_prob, u, std, noise, raw_log_std)


def sample_action(
    policy: GaussianPolicy,
    s: np.ndarray,
    rng: np.random.Generator | None,
    deterministic: bool = False,
    noise: np.ndarray | None = None,
    use_target: bool = False,
) -> tuple[np.ndarray, np.ndarray | float | None]:
    """Draw a = tanh(mean + std * xi) and its log-density, or tanh(mean) when deterministic.

    Accepts one state or a [B, obs_dim] batch. Deterministic mode returns ``None`` as log_prob.
    """
    params = policy.target if use_target else policy.trunk
    out, _ = mlp_forward(params, s)
    batched = out.ndim == 2
    out2 = np.atleast_2d(out)
    act_dim = policy.act_dim
    if deterministic:
        a = np.tanh(out2[:, :act_dim])
        return (a if batched else a[0]), None
    if noise is None:
        if rng is None:
            raise RejectedInputError("stochastic actions need a generator or explicit noise")
        noise = rng.standard_normal((out2.shape[0], act_dim))
    draw = _draw(out2, act_dim, np.atleast_2d(np.asarray(noise, dtype=np.float64)))
    if batched:
        return draw.action, draw.log_prob
    return draw.action[0], float(draw.log_prob[0])


@dataclass
class PolicyLossResult:
    """Loss = q_term + entropy_term + lam * cvar_term, each a batch mean."""

    loss: float
    grads: MlpGrads
    log_probs: np.ndarray
    q_term: float
    entropy_term: float
    cvar_term: float


def policy_loss(
    policy: GaussianPolicy,
    ens: RewardEnsemble,
    cost_critic: QuantileCostCritic,
    batch: TransitionBatch,
    alpha: float,
    lam: float,
    epsilon: float,
    rng: np.random.Generator | None = None,
    n_quantiles: int = 32,
    noise: np.ndarray | None = None,
    cvar_mode: CvarMode | str = CvarMode.STRATIFIED,
) -> PolicyLossResult:
    """mean(-q_bar(s, a) + alpha * log pi(a | s) + lam * CVaR_eps(s, a)).

    The action is reparameterized through the sampled noise. Critics are read only;
    gradients are returned for the policy trunk.
    """
    if len(batch) == 0:
        raise RejectedInputError("policy loss needs a nonempty batch")
    size = len(batch)
    act_dim = policy.act_dim
    out, tape = mlp_forward(policy.trunk, batch.s)
    if noise is None:
        if rng is None:
            raise RejectedInputError("policy loss needs a generator or explicit noise")
        noise = rng.standard_normal((size, act_dim))
    draw = _draw(out, act_dim, np.asarray(noise, dtype=np.float64))
    a = draw.action

    q, dq_da = q_bar_with_action_grad(ens, batch.s, a)
    cvar, cvar_tape = cvar_forward(
        cost_critic.online, batch.s, a, epsilon, n_quantiles, rng, cvar_mode
    )

    q_term = -float(np.mean(q))
    entropy_term = alpha * float(np.mean(draw.log_prob))
    cvar_term = float(np.mean(cvar))
    loss = q_term + entropy_term + lam * cvar_term

    g_logp = alpha / size
    g_a = -dq_da / size
    if lam:
        g_a = g_a + cvar_action_grad(
            cost_critic.online, cvar_tape, np.full(size, lam / size), act_dim
        )
    # log pi depends on a through the squashing correction -sum log(1 - a^2 + eps)
    g_a = g_a + g_logp * 2.0 * a / (1.0 - a * a + SQUASH_EPS)
    tanh_u = np.tanh(draw.pre_tanh)
    g_u = g_a * (1.0 - tanh_u * tanh_u)
    g_mean = g_u
    g_log_std = g_u * draw.std * draw.noise - g_logp
    inside = (draw.raw_log_std >= LOG_STD_MIN) & (draw.raw_log_std <= LOG_STD_MAX)
    g_out = np.concatenate([g_mean, g_log_std * inside], axis=1)
    grads = mlp_backward(policy.trunk, tape, g_out)
    return PolicyLossResult(loss, grads, draw.log_prob, q_term, entropy_term, cvar_term)


def alpha_update(policy: GaussianPolicy, batch_log_probs: np.ndarray) -> float:
    """Adam step on log alpha for the loss -log_alpha * mean(log pi + target_entropy).

    A no-op in fixed-temperature mode. Returns the new alpha.
    """
    if not policy.alpha_auto:
        return policy.alpha
    grad = -float(np.mean(np.asarray(batch_log_probs, dtype=np.float64) + policy.target_entropy))
    adamw_step(policy.log_alpha, ScalarGrad(grad), policy.alpha_state)
    return policy.alpha
