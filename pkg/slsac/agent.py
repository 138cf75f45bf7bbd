# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from loguru import logger

from slsac.constraint import EpisodeCostWindow, Multiplier, SignalMode, record_cost
from slsac.cost import QuantileCostCritic, QuantileNet
from slsac.ensemble import Aggregation, RewardEnsemble
from slsac.errors import RejectedInputError
from slsac.nn import MlpParams, load_arrays, save_arrays
from slsac.optim import ClipMode, LangevinVariant, OptimizerState, parse_optimizer
from slsac.policy import GaussianPolicy
from slsac.runconfig import TrainConfig


# pylint: disable-next=too-many-instance-attributes
@dataclass
class Agent:
    """Every learned component of one training run."""

    policy: GaussianPolicy
    ensemble: RewardEnsemble
    cost_critic: QuantileCostCritic
    multiplier: Multiplier
    window: EpisodeCostWindow
    policy_state: OptimizerState
    cost_state: OptimizerState
    cost_variant: LangevinVariant | None
    cost_rng: np.random.Generator


def langevin_template(config: TrainConfig, lr: float, weight_decay: float) -> OptimizerState:
    opt = config.optim
    return OptimizerState(
        lr=lr,
        beta1=opt.beta1,
        beta2=opt.beta2,
        eps=opt.eps,
        a=opt.a,
        t_inv=opt.t_inv,
        weight_decay=weight_decay,
        clip_c=opt.clip_c,
        clip_mode=ClipMode(opt.clip_mode),
    )


def build_agent(config: TrainConfig, obs_dim: int, act_dim: int, seed: int) -> Agent:
    """Fresh networks for ``seed``; initial weights come from one generator in a fixed order."""
    rng = np.random.default_rng([seed, 1])
    hidden = list(config.network.hidden)
    general, multiplier_warmup = config.warmups()
    policy = GaussianPolicy.init(
        obs_dim,
        act_dim,
        hidden,
        rng,
        alpha=config.policy.alpha,
        alpha_auto=config.policy.alpha_auto,
        target_entropy=config.policy.target_entropy,
        alpha_lr=config.policy.alpha_lr,
    )
    ensemble = RewardEnsemble.create(
        obs_dim,
        act_dim,
        hidden,
        config.ensemble.m,
        rng,
        aggregation=Aggregation(config.ensemble.aggregation),
        variant=parse_optimizer(config.reward_optimizer),
        optimizer=langevin_template(config, config.optim.eta, config.optim.weight_decay),
        seed=seed,
    )
    cost_critic = QuantileCostCritic.init(
        obs_dim, act_dim, hidden, rng, embedding_dim=config.cost.embedding_dim
    )
    cost_variant = parse_optimizer(config.cost.optimizer)
    return Agent(
        policy=policy,
        ensemble=ensemble,
        cost_critic=cost_critic,
        multiplier=Multiplier(
            lam=config.constraint.lambda_init,
            eta_lambda=config.constraint.eta_lambda,
            beta=config.constraint.beta,
            warmup_general=general,
            warmup_multiplier=multiplier_warmup,
            signal_mode=SignalMode(config.constraint.signal_mode),
            tighten_margin=config.constraint.tighten_margin,
            margin_delta=config.constraint.margin_delta,
        ),
        window=EpisodeCostWindow(config.constraint.window),
        policy_state=OptimizerState(lr=config.network.policy_lr),
        cost_state=langevin_template(
            config, config.network.cost_lr, config.network.cost_weight_decay
        ),
        cost_variant=cost_variant,
        cost_rng=np.random.default_rng([seed, 2]),
    )


def _mlp_arrays(prefix: str, params: MlpParams) -> dict[str, np.ndarray]:
    out = {}
    for i, layer in enumerate(params.layers):
        out[f"{prefix}.{i}.weight"] = layer.weight
        out[f"{prefix}.{i}.bias"] = layer.bias
    return out


def _quantile_arrays(prefix: str, net: QuantileNet) -> dict[str, np.ndarray]:
    out = {}
    for part in ("trunk", "embed", "head"):
        out.update(_mlp_arrays(f"{prefix}.{part}", getattr(net, part)))
    return out


def _moment_arrays(prefix: str, state: OptimizerState) -> dict[str, np.ndarray]:
    out = {f"{prefix}.step_count": np.array([float(state.step_count)])}
    for i, (m, v) in enumerate(zip(state.m, state.v)):
        out[f"{prefix}.m.{i}"] = m
        out[f"{prefix}.v.{i}"] = v
    return out


def agent_arrays(agent: Agent) -> dict[str, np.ndarray]:
    """Named arrays for every network, optimizer moment buffer and scalar of the agent."""
    arrays = _mlp_arrays("policy.online", agent.policy.trunk)
    arrays.update(_mlp_arrays("policy.target", agent.policy.target))
    arrays["policy.log_alpha"] = agent.policy.log_alpha.data
    arrays.update(_moment_arrays("policy.optim", agent.policy_state))
    arrays.update(_moment_arrays("policy.alpha_optim", agent.policy.alpha_state))
    for i, (critic, target, state) in enumerate(
        zip(agent.ensemble.critics, agent.ensemble.targets, agent.ensemble.states)
    ):
        arrays.update(_mlp_arrays(f"reward.{i}.online", critic))
        arrays.update(_mlp_arrays(f"reward.{i}.target", target))
        arrays.update(_moment_arrays(f"reward.{i}.optim", state))
    arrays.update(_quantile_arrays("cost.online", agent.cost_critic.online))
    arrays.update(_quantile_arrays("cost.target", agent.cost_critic.target))
    arrays.update(_moment_arrays("cost.optim", agent.cost_state))
    arrays["constraint.lambda"] = np.array([agent.multiplier.lam])
    arrays["constraint.window"] = agent.window.totals()
    return arrays


def save_checkpoint(agent: Agent, path: str | Path) -> None:
    save_arrays(path, agent_arrays(agent))


def _restore(target: np.ndarray, source: np.ndarray, name: str) -> None:
    if target.shape != source.shape:
        raise RejectedInputError(
            f"checkpoint array {name} has shape {source.shape}, expected {target.shape}"
        )
    target[...] = source


def _restore_moments(prefix: str, state: OptimizerState, arrays: dict[str, np.ndarray]) -> None:
    count = 0
    while f"{prefix}.m.{count}" in arrays:
        count += 1
    state.m = [arrays[f"{prefix}.m.{i}"].copy() for i in range(count)]
    state.v = [arrays[f"{prefix}.v.{i}"].copy() for i in range(count)]
    state.step_count = int(arrays[f"{prefix}.step_count"][0])


def load_checkpoint(agent: Agent, path: str | Path) -> Agent:
    """Overwrite ``agent`` in place with the arrays stored at ``path``.

    The agent must have been built from the same configuration; shapes are checked.
    """
    arrays = load_arrays(path)
    expected = agent_arrays(agent)
    missing = sorted(
        name
        for name in expected
        if name not in arrays and ".m." not in name and ".v." not in name
    )
    if missing:
        raise RejectedInputError(f"checkpoint {path} lacks arrays: {', '.join(missing[:5])}")
    for name, target in expected.items():
        if name.endswith((".weight", ".bias")):
            _restore(target, arrays[name], name)
    agent.policy.log_alpha.data[...] = arrays["policy.log_alpha"]
    _restore_moments("policy.optim", agent.policy_state, arrays)
    _restore_moments("policy.alpha_optim", agent.policy.alpha_state, arrays)
    for i, state in enumerate(agent.ensemble.states):
        _restore_moments(f"reward.{i}.optim", state, arrays)
    _restore_moments("cost.optim", agent.cost_state, arrays)
    agent.multiplier.lam = float(arrays["constraint.lambda"][0])
    agent.window = EpisodeCostWindow(agent.window.capacity)
    for total in arrays["constraint.window"]:
        record_cost(agent.window, float(total))
    for params in (
        agent.policy.trunk,
        agent.policy.target,
        *agent.ensemble.critics,
        *agent.ensemble.targets,
        agent.cost_critic.online,
        agent.cost_critic.target,
    ):
        params.mark_updated()
    logger.info(f"[checkpoint] restored {len(arrays)} arrays from {path}")
    return agent
