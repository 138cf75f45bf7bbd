# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import click
from dataclasses_json import dataclass_json
from loguru import logger

from slsac import __version__
from slsac.agent import save_checkpoint
from slsac.cmd.common import cli_errors
from slsac.configmanager import OUTPUT_DIR_ENV, ConfigManager
from slsac.runconfig import TrainConfig, config_from_text, load_config, to_toml
from slsac.trainer import MetricsWriter, RunSummary, Trainer

CONFIG_SNAPSHOT = "config.toml"
MANIFEST = "manifest.json"
METRICS = "metrics.jsonl"
CHECKPOINT = "agent.ckpt"
SUMMARY = "summary.json"
RUN_LOG = "run.log"


def seed_dir_name(seed: int) -> str:
    return f"seed_{seed}"


@dataclass_json
@dataclass
class RunManifest:
    """Self-description of a run directory."""

    version: str
    config: str
    seeds: list[int]
    overrides: list[str]
    warmup_general: int
    warmup_multiplier: int
    layout: dict[str, str] = field(default_factory=dict)


def run_seed(config_text: str, seed: int, seed_dir: str) -> dict:
    """Train one seed from a config snapshot; returns the summary as a dict.

    Top-level so that it can run in a worker process.
    """
    out = Path(seed_dir)
    out.mkdir(parents=True, exist_ok=True)
    sink_id = logger.add(out / RUN_LOG, level="DEBUG")
    try:
        config = config_from_text(config_text)
        with (out / METRICS).open("w", encoding="utf-8", newline="\n") as stream:
            trainer = Trainer(config, seed, sink=MetricsWriter(stream))
            summary = trainer.run()
        save_checkpoint(trainer.agent, out / CHECKPOINT)
        (out / SUMMARY).write_text(summary.to_json(indent=2, sort_keys=True) + "\n")
    finally:
        logger.remove(sink_id)
    return summary.to_dict()


def run_training(
    config: TrainConfig, run_dir: Path, overrides: Sequence[str] = (), parallel: int = 1
) -> list[RunSummary]:
    """Write the snapshot and manifest, then train every configured seed."""
    run_dir.mkdir(parents=True, exist_ok=True)
    text = to_toml(config)
    (run_dir / CONFIG_SNAPSHOT).write_text(text, encoding="utf-8")
    seeds = list(config.train.seeds)
    general, multiplier = config.warmups()
    manifest = RunManifest(
        version=__version__,
        config=CONFIG_SNAPSHOT,
        seeds=seeds,
        overrides=list(overrides),
        warmup_general=general,
        warmup_multiplier=multiplier,
        layout={str(seed): seed_dir_name(seed) for seed in seeds},
    )
    (run_dir / MANIFEST).write_text(manifest.to_json(indent=2, sort_keys=True) + "\n")
    dirs = [str(run_dir / seed_dir_name(seed)) for seed in seeds]
    logger.info(f"[train] {len(seeds)} seed(s) into {run_dir} with {parallel} worker(s)")
    if parallel > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(run_seed, [text] * len(seeds), seeds, dirs))
    else:
        results = [run_seed(text, seed, d) for seed, d in zip(seeds, dirs)]
    return [RunSummary.from_dict(r) for r in results]


def resolve_run_dir(out_dir: Path | None, name: str) -> Path:
    return ConfigManager().output_root(out_dir) / name


def echo_summaries(summaries: Sequence[RunSummary]) -> None:
    for s in summaries:
        cvar = "n/a" if s.final_cvar is None else f"{s.final_cvar:.3f}"
        ret = "n/a" if s.eval_return is None else f"{s.eval_return:.3f}"
        click.echo(
            f"seed {s.seed}: episodes={s.episodes} cvar={cvar} eval_return={ret} "
            f"lambda={s.final_lambda:.4g}"
        )


@click.command("train")
@click.argument("config_path", type=click.Path(path_type=Path))
@click.option(
    "--override",
    "overrides",
    multiple=True,
    help="Replace one configuration value, as section.key=value. Repeatable.",
)
@click.option(
    "--out-dir",
    envvar=OUTPUT_DIR_ENV,
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help=f"Output root; defaults to ${OUTPUT_DIR_ENV}, then core.output_dir, then ./runs.",
)
@click.option("--name", default=None, help="Run directory name; defaults to the config stem.")
@click.option("--parallel", type=click.IntRange(min=1), default=1, help="Seeds trained at once.")
def train_command(
    config_path: Path,
    overrides: tuple[str, ...],
    out_dir: Path | None,
    name: str | None,
    parallel: int,
):
    """Train on CONFIG_PATH once per configured seed."""
    with cli_errors():
        config = load_config(config_path, overrides)
        run_dir = resolve_run_dir(out_dir, name or config_path.stem)
        summaries = run_training(config, run_dir, overrides, parallel)
    echo_summaries(summaries)
    click.echo(f"run directory: {run_dir}")
