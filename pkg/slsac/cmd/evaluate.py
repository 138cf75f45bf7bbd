# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from pathlib import Path

import click

from slsac.agent import build_agent, load_checkpoint
from slsac.cmd.common import UsageFailure, cli_errors
from slsac.cmd.train import CHECKPOINT, CONFIG_SNAPSHOT, seed_dir_name
from slsac.plugin.manager import make_environment
from slsac.runconfig import config_from_text
from slsac.trainer import evaluate


@click.command("eval")
@click.argument("run_dir", type=click.Path(file_okay=False, path_type=Path))
@click.option("--seed", "seeds", type=int, multiple=True, help="Seed(s) to evaluate; default all.")
@click.option("--episodes", type=click.IntRange(min=1), default=None, help="Rollouts per seed.")
@click.option("--eval-seed", type=int, default=0, help="Seed for the evaluation resets.")
def eval_command(run_dir: Path, seeds: tuple[int, ...], episodes: int | None, eval_seed: int):
    """Reload checkpoints from RUN_DIR and run deterministic evaluation rollouts."""
    snapshot = run_dir / CONFIG_SNAPSHOT
    if not snapshot.is_file():
        raise UsageFailure(f"no {CONFIG_SNAPSHOT} in {run_dir}")
    with cli_errors():
        config = config_from_text(snapshot.read_text(encoding="utf-8"))
        count = episodes or config.train.eval_episodes
        for seed in seeds or config.train.seeds:
            ckpt = run_dir / seed_dir_name(seed) / CHECKPOINT
            if not ckpt.is_file():
                raise UsageFailure(f"missing checkpoint {ckpt}")
            env = make_environment(config.env_settings())
            agent = load_checkpoint(build_agent(config, env.obs_dim, env.act_dim, seed), ckpt)
            result = evaluate(agent.policy, env, count, eval_seed)
            click.echo(
                f"seed {seed}: mean return {result.mean_return:.4f}, "
                f"mean cost {result.mean_cost:.4f} over {count} episodes"
            )
