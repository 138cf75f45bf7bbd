# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
"""Training configuration: TOML files, ``section.key=value`` overrides and validation."""

import dataclasses
import typing
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import tomlkit
from dataclasses_json import dataclass_json
from tomlkit.exceptions import ParseError

from slsac.errors import ConfigError
from slsac.optim import OPTIMIZER_CHOICES, ClipMode, LangevinVariant

SMALL_RUN_LIMIT = 1_000_000
GENERAL_WARMUP_CAP = 5_000
MULTIPLIER_WARMUP_CAP = 100_000


# pylint: disable=too-many-instance-attributes
@dataclass_json
@dataclass
class TrainSection:
    total_steps: int = 50_000
    steps_per_epoch: int = 2000
    batch_size: int = 256
    buffer_size: int = 1_000_000
    gamma: float = 0.99
    tau_soft: float = 0.005
    eval_episodes: int = 30
    seeds: list[int] = field(default_factory=lambda: [0, 1, 2, 3, 4])
    policy_delay: int = 2
    log_interval: int = 1000
    final_window: int = 50
    eval_every_epoch: bool = True
    eval_episodes_epoch: int = 5


@dataclass_json
@dataclass
class NetworkSection:
    hidden: list[int] = field(default_factory=lambda: [256, 256])
    policy_lr: float = 3e-4
    cost_lr: float = 3e-4
    cost_weight_decay: float = 0.01


@dataclass_json
@dataclass
class EnvSection:
    name: str = "point_velocity"
    v_limit: float = 1.0
    hazards: int = 3
    hazard_cost: str = "indicator"
    horizon: int = 0
    seed: int = 0
    reset_noise: float = 0.05


@dataclass_json
@dataclass
class OptimSection:
    eta: float = 3e-4
    a: float = 0.1
    t_inv: float = 1e-8
    clip_c: float = 0.7
    clip_mode: str = "elementwise"
    variant: str = "slsac_asgld"
    weight_decay: float = 0.0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


@dataclass_json
@dataclass
class CostSection:
    n_quantiles: int = 32
    n_target_quantiles: int = 32
    kappa: float = 1.0
    epsilon: float = 0.5
    gamma_c: float = 0.99
    embedding_dim: int = 64
    cvar_mode: str = "stratified"
    optimizer: str = "adamw"


@dataclass_json
@dataclass
class EnsembleSection:
    m: int = 3
    aggregation: str = "mean_min"
    optimizer_variant: str | None = None


@dataclass_json
@dataclass
class PolicySection:
    alpha: float = 0.2
    alpha_auto: bool = True
    target_entropy: float | None = None
    alpha_lr: float = 3e-4


@dataclass_json
@dataclass
class ConstraintSection:
    beta: float = 25.0
    eta_lambda: float = 0.01
    window: int = 64
    epsilon: float | None = None
    warmup_general: int | None = None
    warmup_multiplier: int | None = None
    signal_mode: str = "cvar"
    lambda_init: float = 0.0
    tighten_margin: bool = False
    margin_delta: float = 0.0


# pylint: enable=too-many-instance-attributes


@dataclass_json
@dataclass
class TrainConfig:
    train: TrainSection = field(default_factory=TrainSection)
    network: NetworkSection = field(default_factory=NetworkSection)
    env: EnvSection = field(default_factory=EnvSection)
    optim: OptimSection = field(default_factory=OptimSection)
    cost: CostSection = field(default_factory=CostSection)
    ensemble: EnsembleSection = field(default_factory=EnsembleSection)
    policy: PolicySection = field(default_factory=PolicySection)
    constraint: ConstraintSection = field(default_factory=ConstraintSection)

    @property
    def constraint_epsilon(self) -> float:
        eps = self.constraint.epsilon
        return self.cost.epsilon if eps is None else eps

    @property
    def reward_optimizer(self) -> str:
        """``ensemble.optimizer_variant`` when set, otherwise ``optim.variant``."""
        return self.ensemble.optimizer_variant or self.optim.variant

    def warmups(self) -> tuple[int, int]:
        """(general, multiplier) warmup lengths after filling in the automatic defaults."""
        total = self.train.total_steps
        general = self.constraint.warmup_general
        multiplier = self.constraint.warmup_multiplier
        if general is None:
            if total >= SMALL_RUN_LIMIT:
                general = GENERAL_WARMUP_CAP
            else:
                general = min(max(self.train.batch_size, total // 20), GENERAL_WARMUP_CAP)
        if multiplier is None:
            if total >= SMALL_RUN_LIMIT:
                multiplier = MULTIPLIER_WARMUP_CAP
            else:
                multiplier = min(total // 20, MULTIPLIER_WARMUP_CAP)
        return general, multiplier

    def env_settings(self) -> dict[str, Any]:
        return dataclasses.asdict(self.env)


SECTIONS = {f.name: f.type for f in dataclasses.fields(TrainConfig)}


def _section_types(section: str) -> dict[str, Any]:
    return typing.get_type_hints(SECTIONS[section])


def _coerce(key: str, value: Any, hint: Any) -> tuple[Any, str | None]:
    """Check ``value`` against a field annotation; ints widen to floats."""
    args = typing.get_args(hint)
    if type(None) in args:
        if value is None:
            return None, None
        hint = next(arg for arg in args if arg is not type(None))
    if hint is bool:
        if isinstance(value, bool):
            return value, None
    elif hint is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value, None
    elif hint is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value), None
    elif hint is str:
        if isinstance(value, str):
            return value, None
    elif typing.get_origin(hint) is list:
        if isinstance(value, list) and all(
            isinstance(v, int) and not isinstance(v, bool) for v in value
        ):
            return list(value), None
    return None, f"{key}: expected {getattr(hint, '__name__', hint)}, got {value!r}"


def _flatten(doc: dict[str, Any]) -> dict[str, Any]:
    flat = {}
    for key, value in doc.items():
        if isinstance(value, dict):
            for sub, inner in value.items():
                flat[f"{key}.{sub}"] = inner
        else:
            flat[key] = value
    return flat


def parse_override(text: str) -> tuple[str, Any]:
    """Split ``section.key=value``; the value uses TOML syntax and falls back to a bare string."""
    if "=" not in text:
        raise ConfigError([f"override '{text}' is not of the form section.key=value"])
    key, raw = (part.strip() for part in text.split("=", 1))
    try:
        value = tomlkit.parse(f"v = {raw}").unwrap()["v"]
    except ParseError:
        value = raw
    return key, value


def read_config_file(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError([f"config file not found: {path}"])
    try:
        doc = tomlkit.parse(path.read_text(encoding="utf-8")).unwrap()
    except ParseError as err:
        raise ConfigError([f"{path}: {err}"]) from err
    return _flatten(doc)


def build_config(values: dict[str, Any]) -> TrainConfig:
    """Apply dotted-key ``values`` on top of the defaults, reporting every problem at once."""
    problems = []
    sections: dict[str, dict[str, Any]] = {name: {} for name in SECTIONS}
    for key, value in values.items():
        section, _, name = key.partition(".")
        if section not in SECTIONS or not name:
            problems.append(f"{key}: unknown key")
            continue
        hints = _section_types(section)
        if name not in hints:
            problems.append(f"{key}: unknown key")
            continue
        coerced, problem = _coerce(key, value, hints[name])
        if problem:
            problems.append(problem)
        else:
            sections[section][name] = coerced
    if problems:
        raise ConfigError(problems)
    config = TrainConfig(**{name: SECTIONS[name](**kw) for name, kw in sections.items()})
    problems = validate(config)
    if problems:
        raise ConfigError(problems)
    return config


def config_from_text(text: str) -> TrainConfig:
    """Rebuild a configuration from a snapshot written by ``to_toml``."""
    try:
        doc = tomlkit.parse(text).unwrap()
    except ParseError as err:
        raise ConfigError([str(err)]) from err
    return build_config(_flatten(doc))


def load_config(path: str | Path | None = None, overrides: Sequence[str] = ()) -> TrainConfig:
    values = read_config_file(path) if path is not None else {}
    for text in overrides:
        key, value = parse_override(text)
        values[key] = value
    return build_config(values)


def _check(problems: list[str], ok: bool, message: str) -> None:
    if not ok:
        problems.append(message)


# pylint: disable-next=too-many-statements
def validate(config: TrainConfig) -> list[str]:
    problems: list[str] = []
    tr, net, env, opt, cost = config.train, config.network, config.env, config.optim, config.cost
    ens, pol, con = config.ensemble, config.policy, config.constraint
    _check(problems, tr.total_steps >= 0, f"train.total_steps must be >= 0, got {tr.total_steps}")
    _check(problems, tr.steps_per_epoch >= 1, "train.steps_per_epoch must be >= 1")
    _check(problems, tr.batch_size >= 1, f"train.batch_size must be >= 1, got {tr.batch_size}")
    _check(
        problems,
        tr.batch_size <= tr.buffer_size,
        f"train.batch_size {tr.batch_size} exceeds train.buffer_size {tr.buffer_size}",
    )
    _check(problems, 0.0 <= tr.gamma < 1.0, f"train.gamma must be in [0, 1), got {tr.gamma}")
    _check(problems, 0.0 <= tr.tau_soft <= 1.0, "train.tau_soft must be in [0, 1]")
    _check(problems, tr.eval_episodes >= 0, "train.eval_episodes must be >= 0")
    _check(problems, tr.eval_episodes_epoch >= 0, "train.eval_episodes_epoch must be >= 0")
    _check(problems, len(tr.seeds) >= 1, "train.seeds must list at least one seed")
    _check(problems, len(set(tr.seeds)) == len(tr.seeds), "train.seeds must be distinct")
    _check(problems, tr.policy_delay >= 1, "train.policy_delay must be >= 1")
    _check(problems, tr.log_interval >= 1, "train.log_interval must be >= 1")
    _check(problems, tr.final_window >= 1, "train.final_window must be >= 1")

    _check(
        problems,
        bool(net.hidden) and all(h > 0 for h in net.hidden),
        f"network.hidden widths must be > 0, got {net.hidden}",
    )
    _check(problems, net.policy_lr > 0, "network.policy_lr must be > 0")
    _check(problems, net.cost_lr > 0, "network.cost_lr must be > 0")
    _check(problems, net.cost_weight_decay >= 0, "network.cost_weight_decay must be >= 0")

    _check(problems, env.hazards >= 0, "env.hazards must be >= 0")
    _check(problems, env.horizon >= 0, "env.horizon must be >= 0 (0 selects the default)")
    _check(
        problems,
        env.hazard_cost in ("indicator", "depth"),
        f"env.hazard_cost must be indicator or depth, got {env.hazard_cost!r}",
    )
    _check(problems, env.reset_noise >= 0, "env.reset_noise must be >= 0")

    _check(problems, opt.eta > 0, f"optim.eta must be > 0, got {opt.eta}")
    _check(problems, opt.t_inv >= 0, f"optim.t_inv must be >= 0, got {opt.t_inv}")
    _check(problems, opt.clip_c > 0, f"optim.clip_c must be > 0, got {opt.clip_c}")
    _check(problems, opt.weight_decay >= 0, "optim.weight_decay must be >= 0")
    _check(problems, 0.0 <= opt.beta1 < 1.0, "optim.beta1 must be in [0, 1)")
    _check(problems, 0.0 <= opt.beta2 < 1.0, "optim.beta2 must be in [0, 1)")
    _check(problems, opt.eps > 0, "optim.eps must be > 0")
    _check(
        problems,
        opt.clip_mode in {m.value for m in ClipMode},
        f"optim.clip_mode must be elementwise or norm, got {opt.clip_mode!r}",
    )
    _check(
        problems,
        opt.variant in {v.value for v in LangevinVariant},
        f"optim.variant must be one of {[v.value for v in LangevinVariant]}, got {opt.variant!r}",
    )

    _check(problems, cost.n_quantiles >= 1, "cost.n_quantiles must be >= 1")
    _check(problems, cost.n_target_quantiles >= 1, "cost.n_target_quantiles must be >= 1")
    _check(problems, cost.kappa > 0, f"cost.kappa must be > 0, got {cost.kappa}")
    _check(
        problems, 0.0 < cost.epsilon <= 1.0, f"cost.epsilon must be in (0, 1], got {cost.epsilon}"
    )
    _check(problems, 0.0 <= cost.gamma_c < 1.0, "cost.gamma_c must be in [0, 1)")
    _check(problems, cost.embedding_dim >= 1, "cost.embedding_dim must be >= 1")
    _check(
        problems,
        cost.cvar_mode in ("stratified", "sampled"),
        f"cost.cvar_mode must be stratified or sampled, got {cost.cvar_mode!r}",
    )
    _check(
        problems,
        cost.optimizer in OPTIMIZER_CHOICES,
        f"cost.optimizer must be one of {list(OPTIMIZER_CHOICES)}, got {cost.optimizer!r}",
    )

    _check(problems, ens.m >= 1, f"ensemble.m must be >= 1, got {ens.m}")
    _check(
        problems,
        ens.aggregation in ("mean_min", "min_min"),
        f"ensemble.aggregation must be mean_min or min_min, got {ens.aggregation!r}",
    )
    _check(
        problems,
        ens.optimizer_variant is None or ens.optimizer_variant in OPTIMIZER_CHOICES,
        f"ensemble.optimizer_variant must be one of {list(OPTIMIZER_CHOICES)}",
    )

    _check(problems, pol.alpha > 0, f"policy.alpha must be > 0, got {pol.alpha}")
    _check(problems, pol.alpha_lr > 0, "policy.alpha_lr must be > 0")

    _check(problems, con.beta > 0, f"constraint.beta must be > 0, got {con.beta}")
    _check(problems, con.eta_lambda > 0, "constraint.eta_lambda must be > 0")
    _check(problems, con.window >= 1, "constraint.window must be >= 1")
    _check(
        problems,
        con.epsilon is None or 0.0 < con.epsilon <= 1.0,
        f"constraint.epsilon must be in (0, 1], got {con.epsilon}",
    )
    _check(problems, con.lambda_init >= 0, "constraint.lambda_init must be >= 0")
    _check(problems, con.margin_delta >= 0, "constraint.margin_delta must be >= 0")
    _check(
        problems,
        con.signal_mode in ("cvar", "expected"),
        f"constraint.signal_mode must be cvar or expected, got {con.signal_mode!r}",
    )
    if con.warmup_multiplier is not None:
        _check(problems, con.warmup_multiplier >= 0, "constraint.warmup_multiplier must be >= 0")
    general, _ = config.warmups()
    _check(
        problems,
        general >= tr.batch_size,
        f"constraint.warmup_general {general} is smaller than train.batch_size {tr.batch_size}",
    )
    return problems


def to_toml(config: TrainConfig) -> str:
    """Render every set key; unset optional keys are omitted so a reload reproduces them."""
    doc = tomlkit.document()
    for name in SECTIONS:
        table = tomlkit.table()
        for key, value in dataclasses.asdict(getattr(config, name)).items():
            if value is not None:
                table.add(key, value)
        doc.add(name, table)
    return tomlkit.dumps(doc)
