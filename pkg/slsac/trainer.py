# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import json
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import IO, Protocol

import numpy as np
from dataclasses_json import config as json_config
from dataclasses_json import dataclass_json
from loguru import logger

from slsac.agent import Agent, build_agent
from slsac.constraint import record_cost, update_lambda
from slsac.cost import CvarMode, cost_critic_loss, cvar_from_critic, empirical_cvar
from slsac.ensemble import ensemble_update
from slsac.envs import Environment, ReplayBuffer, env_reset, env_step
from slsac.errors import NumericalAbortError, RejectedStepError
from slsac.nn import soft_update
from slsac.optim import adamw_step, optimizer_step
from slsac.plugin.manager import make_environment
from slsac.policy import alpha_update, policy_loss
from slsac.runconfig import TrainConfig
from slsac.runtypes import Transition, TransitionBatch


class Event(str, Enum):
    ENV_STEP = "env_step"
    STORE = "store"
    EPISODE_END = "episode_end"
    REWARD_UPDATE = "reward_update"
    COST_UPDATE = "cost_update"
    CVAR = "cvar"
    POLICY_UPDATE = "policy_update"
    TARGET_UPDATE = "target_update"
    LAMBDA_UPDATE = "lambda_update"


Tracer = Callable[[int, Event], None]


class Actor(Protocol):
    def act(self, s: np.ndarray) -> np.ndarray: ...


class RandomActor:
    """Uniform actions in [-1, 1]^act_dim; the baseline for return comparisons."""

    def __init__(self, act_dim: int, seed: int = 0) -> None:
        self.act_dim = act_dim
        self.rng = np.random.default_rng(seed)

    def act(self, s: np.ndarray) -> np.ndarray:
        return self.rng.uniform(-1.0, 1.0, size=self.act_dim)


# pylint: disable-next=too-many-instance-attributes
@dataclass_json
@dataclass
class MetricsRecord:
    """One line of the metrics stream; ``kind`` is "episode", "update" or "eval"."""

    kind: str
    step: int
    episode: int | None = None
    episode_return: float | None = None
    episode_cost: float | None = None
    lam: float | None = field(default=None, metadata=json_config(field_name="lambda"))
    empirical_cvar: float | None = None
    alpha: float | None = None
    reward_critic_loss: float | None = None
    cost_critic_loss: float | None = None
    policy_loss: float | None = None
    q_term: float | None = None
    entropy_term: float | None = None
    cvar_term: float | None = None
    cvar_estimate: float | None = None
    eval_return: float | None = None
    eval_cost: float | None = None

    def to_json_line(self) -> str:
        payload = {k: v for k, v in self.to_dict().items() if v is not None}
        return json.dumps(payload, sort_keys=True)


# pylint: disable-next=too-many-instance-attributes
@dataclass_json
@dataclass
class RunSummary:
    seed: int
    total_steps: int
    episodes: int = 0
    reward_updates: int = 0
    policy_updates: int = 0
    final_lambda: float = 0.0
    final_cvar: float | None = None
    final_mean_cost: float | None = None
    eval_return: float | None = None
    eval_cost: float | None = None


@dataclass
class EvalResult:
    mean_return: float
    mean_cost: float
    returns: list[float]
    costs: list[float]


class MetricsWriter:
    """Sink that appends each record to a JSON-lines stream."""

    def __init__(self, stream: IO[str]) -> None:
        self.stream = stream
        self.last_step = 0

    def __call__(self, record: MetricsRecord) -> None:
        if record.step < self.last_step:
            raise ValueError(f"metrics step went backwards: {record.step} < {self.last_step}")
        self.last_step = record.step
        self.stream.write(record.to_json_line() + "\n")


def read_metrics(path: str | Path) -> tuple[list[dict], int]:
    """Parse a metrics file, returning the records and the count of malformed lines skipped."""
    records = []
    malformed = 0
    with Path(path).open(encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                malformed += 1
                continue
            if not isinstance(obj, dict) or "step" not in obj or "kind" not in obj:
                malformed += 1
                continue
            records.append(obj)
    return records, malformed


def evaluate(
    actor: Actor, env: Environment, episodes: int, seed: int | Sequence[int]
) -> EvalResult:
    """Undiscounted return and cost of ``episodes`` full rollouts with ``actor.act``."""
    rng = np.random.default_rng(seed)
    returns, costs = [], []
    for _ in range(episodes):
        obs = env_reset(env, rng)
        total_r = total_c = 0.0
        done = False
        while not done:
            obs, r, c, done = env_step(env, actor.act(obs))
            total_r += r
            total_c += c
        returns.append(total_r)
        costs.append(total_c)
    if not returns:
        return EvalResult(0.0, 0.0, [], [])
    return EvalResult(float(np.mean(returns)), float(np.mean(costs)), returns, costs)


# pylint: disable-next=too-many-instance-attributes
class Trainer:
    """The interaction and update loop for one seed.

    Per environment step: act, store, close the episode if done, then (after the general warmup)
    update the reward ensemble, the cost critic, estimate the batch CVaR, every ``policy_delay``
    update steps update the policy and all targets, and finally update the multiplier.
    """

    # pylint: disable-next=too-many-arguments
    def __init__(
        self,
        config: TrainConfig,
        seed: int,
        env_factory: Callable[[], Environment] | None = None,
        sink: Callable[[MetricsRecord], None] | None = None,
        tracer: Tracer | None = None,
    ) -> None:
        self.config = config
        self.seed = seed
        self.env_factory = env_factory or (lambda: make_environment(config.env_settings()))
        self.env = self.env_factory()
        self.records: list[MetricsRecord] = []
        self.sink = sink or self.records.append
        self.tracer = tracer
        self.agent: Agent = build_agent(config, self.env.obs_dim, self.env.act_dim, seed)
        capacity = min(config.train.buffer_size, max(config.train.total_steps, 1))
        capacity = max(capacity, config.train.batch_size)
        self.buffer = ReplayBuffer(capacity, self.env.obs_dim, self.env.act_dim)
        self.rng = np.random.default_rng([seed, 0])
        self.env_rng = np.random.default_rng([seed, 3])
        self.warmup_general, self.warmup_multiplier = config.warmups()
        self.episode_costs: list[float] = []
        self.summary = RunSummary(seed=seed, total_steps=config.train.total_steps)
        self._last_policy: dict[str, float] = {}

    def _trace(self, t: int, event: Event) -> None:
        if self.tracer is not None:
            self.tracer(t, event)

    def _emit(self, record: MetricsRecord) -> None:
        self.sink(record)

    def _window_cvar(self) -> float | None:
        totals = self.agent.window.totals()
        if totals.size == 0:
            return None
        return empirical_cvar(totals, self.config.constraint_epsilon)

    def run(self) -> RunSummary:
        cfg = self.config.train
        agent = self.agent
        mode = "auto-tuned" if agent.policy.alpha_auto else "fixed"
        logger.warning(f"[trainer] seed {self.seed}: entropy temperature is {mode}")
        logger.info(
            f"[trainer] seed {self.seed}: {cfg.total_steps} steps, warmups "
            f"{self.warmup_general}/{self.warmup_multiplier}, env {self.env.name}"
        )
        obs = env_reset(self.env, self.env_rng)
        ep_return = ep_cost = 0.0
        for t in range(cfg.total_steps):
            if t < self.warmup_general:
                a = self.rng.uniform(-1.0, 1.0, size=self.env.act_dim)
            else:
                a, _ = agent.policy.sample(obs, self.rng)
            s_next, r, c, d = env_step(self.env, a)
            self._trace(t, Event.ENV_STEP)
            self.buffer.push(Transition(obs, np.asarray(a, dtype=np.float64), r, c, s_next, d))
            self._trace(t, Event.STORE)
            ep_return += r
            ep_cost += c
            obs = s_next
            if d:
                self._end_episode(t, ep_return, ep_cost)
                obs = env_reset(self.env, self.env_rng)
                ep_return = ep_cost = 0.0
            if t >= self.warmup_general:
                self._update(t)
            if (t + 1) % cfg.steps_per_epoch == 0:
                self._end_epoch(t)
        return self._finish()

    def _end_episode(self, t: int, ep_return: float, ep_cost: float) -> None:
        agent = self.agent
        record_cost(agent.window, ep_cost)
        self.episode_costs.append(ep_cost)
        self.summary.episodes += 1
        self._trace(t, Event.EPISODE_END)
        self._emit(
            MetricsRecord(
                kind="episode",
                step=t + 1,
                episode=self.summary.episodes,
                episode_return=ep_return,
                episode_cost=ep_cost,
                lam=agent.multiplier.lam,
                empirical_cvar=self._window_cvar(),
                alpha=agent.policy.alpha,
            )
        )

    def _guard(self, t: int, name: str, value: float) -> None:
        if not np.isfinite(value):
            raise NumericalAbortError(t + 1, name, value)

    # pylint: disable-next=too-many-locals
    def _update(self, t: int) -> None:
        cfg = self.config
        agent = self.agent
        u = t - self.warmup_general + 1
        batch = self.buffer.sample(cfg.train.batch_size, self.rng)
        alpha = agent.policy.alpha
        try:
            reward = ensemble_update(
                agent.ensemble, batch, agent.policy, alpha, cfg.train.gamma, self.rng
            )
        except RejectedStepError as err:
            raise NumericalAbortError(t + 1, "reward_critic", float("nan")) from err
        self._guard(t, "reward_critic", reward.mean_loss)
        self.summary.reward_updates += 1
        self._trace(t, Event.REWARD_UPDATE)

        cost_loss = self._update_cost_critic(t, batch)
        self._trace(t, Event.COST_UPDATE)

        cvar_mode = CvarMode(cfg.cost.cvar_mode)
        cvar_estimate = float(
            np.mean(
                cvar_from_critic(
                    agent.cost_critic,
                    batch.s,
                    batch.a,
                    cfg.cost.epsilon,
                    cfg.cost.n_quantiles,
                    self.rng,
                    cvar_mode,
                )
            )
        )
        self._trace(t, Event.CVAR)

        if u % cfg.train.policy_delay == 0:
            self._update_policy(t, batch, alpha, cvar_mode)

        if t >= agent.multiplier.active_from:
            update_lambda(agent.multiplier, agent.window, cfg.constraint_epsilon, t)
            if len(agent.window):
                self._trace(t, Event.LAMBDA_UPDATE)

        if u % cfg.train.log_interval == 0:
            logger.debug(
                f"[trainer] step {t + 1}: reward {reward.mean_loss:.4g} cost {cost_loss:.4g} "
                f"lambda {agent.multiplier.lam:.4g} alpha {agent.policy.alpha:.4g}"
            )
            self._emit(
                MetricsRecord(
                    kind="update",
                    step=t + 1,
                    lam=agent.multiplier.lam,
                    alpha=agent.policy.alpha,
                    reward_critic_loss=reward.mean_loss,
                    cost_critic_loss=cost_loss,
                    cvar_estimate=cvar_estimate,
                    **self._last_policy,
                )
            )

    def _update_cost_critic(self, t: int, batch: TransitionBatch) -> float:
        cfg = self.config.cost
        agent = self.agent
        result = cost_critic_loss(
            agent.cost_critic,
            batch,
            agent.policy,
            cfg.n_quantiles,
            cfg.n_target_quantiles,
            cfg.gamma_c,
            cfg.kappa,
            self.rng,
        )
        self._guard(t, "cost_critic", result.loss)
        try:
            optimizer_step(
                agent.cost_critic.online,
                result.grads,
                agent.cost_state,
                agent.cost_variant,
                agent.cost_rng,
            )
        except RejectedStepError as err:
            raise NumericalAbortError(t + 1, "cost_critic", result.loss) from err
        return result.loss

    def _update_policy(
        self, t: int, batch: TransitionBatch, alpha: float, cvar_mode: CvarMode
    ) -> None:
        cfg = self.config
        agent = self.agent
        result = policy_loss(
            agent.policy,
            agent.ensemble,
            agent.cost_critic,
            batch,
            alpha,
            agent.multiplier.lam,
            cfg.cost.epsilon,
            self.rng,
            cfg.cost.n_quantiles,
            cvar_mode=cvar_mode,
        )
        self._guard(t, "policy", result.loss)
        try:
            adamw_step(agent.policy.trunk, result.grads, agent.policy_state)
        except RejectedStepError as err:
            raise NumericalAbortError(t + 1, "policy", result.loss) from err
        alpha_update(agent.policy, result.log_probs)
        self.summary.policy_updates += 1
        logger.trace(
            f"[trainer] step {t + 1}: policy q {result.q_term:.4g} "
            f"entropy {result.entropy_term:.4g} cvar {result.cvar_term:.4g}"
        )
        self._last_policy = {
            "policy_loss": result.loss,
            "q_term": result.q_term,
            "entropy_term": result.entropy_term,
            "cvar_term": result.cvar_term,
        }
        self._trace(t, Event.POLICY_UPDATE)

        tau = cfg.train.tau_soft
        for online, target in zip(agent.ensemble.critics, agent.ensemble.targets):
            soft_update(online, target, tau)
        soft_update(agent.cost_critic.online, agent.cost_critic.target, tau)
        soft_update(agent.policy.trunk, agent.policy.target, tau)
        self._trace(t, Event.TARGET_UPDATE)

    def _end_epoch(self, t: int) -> None:
        cfg = self.config.train
        epoch = (t + 1) // cfg.steps_per_epoch
        recent = self.episode_costs[-cfg.final_window :]
        mean_cost = float(np.mean(recent)) if recent else float("nan")
        logger.info(
            f"[trainer] seed {self.seed} epoch {epoch}: episodes {self.summary.episodes}, "
            f"recent cost {mean_cost:.3f}, lambda {self.agent.multiplier.lam:.4g}"
        )
        if cfg.eval_every_epoch and cfg.eval_episodes_epoch > 0:
            result = evaluate(
                self.agent.policy,
                self.env_factory(),
                cfg.eval_episodes_epoch,
                [self.seed, 4, epoch],
            )
            self._emit(
                MetricsRecord(
                    kind="eval",
                    step=t + 1,
                    eval_return=result.mean_return,
                    eval_cost=result.mean_cost,
                )
            )

    def _finish(self) -> RunSummary:
        cfg = self.config.train
        summary = self.summary
        summary.final_lambda = self.agent.multiplier.lam
        recent = self.episode_costs[-cfg.final_window :]
        if recent:
            summary.final_cvar = empirical_cvar(np.array(recent), self.config.constraint_epsilon)
            summary.final_mean_cost = float(np.mean(recent))
        if cfg.total_steps > 0 and cfg.eval_episodes > 0:
            result = evaluate(
                self.agent.policy, self.env_factory(), cfg.eval_episodes, [self.seed, 5]
            )
            summary.eval_return = result.mean_return
            summary.eval_cost = result.mean_cost
            self._emit(
                MetricsRecord(
                    kind="eval",
                    step=cfg.total_steps,
                    eval_return=result.mean_return,
                    eval_cost=result.mean_cost,
                )
            )
        logger.info(
            f"[trainer] seed {self.seed} done: {summary.episodes} episodes, "
            f"{summary.policy_updates} policy updates, lambda {summary.final_lambda:.4g}"
        )
        return summary


def train(
    config: TrainConfig,
    seed: int,
    sink: Callable[[MetricsRecord], None] | None = None,
    tracer: Tracer | None = None,
) -> tuple[RunSummary, Trainer]:
    trainer = Trainer(config, seed, sink=sink, tracer=tracer)
    return trainer.run(), trainer
