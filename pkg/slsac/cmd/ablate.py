# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import csv
from pathlib import Path

import click
from loguru import logger

from slsac.cmd.common import UsageFailure, cli_errors
from slsac.cmd.train import resolve_run_dir, run_training
from slsac.configmanager import OUTPUT_DIR_ENV
from slsac.optim import ADAMW, LangevinVariant
from slsac.runconfig import load_config

AXES: dict[str, tuple[str, tuple]] = {
    "optimizer": (
        "ensemble.optimizer_variant",
        (*(v.value for v in LangevinVariant), ADAMW),
    ),
    "epsilon": ("cost.epsilon", (0.2, 0.5, 0.75, 1.0)),
    "aggregation": ("ensemble.aggregation", ("mean_min", "min_min")),
    "m": ("ensemble.m", (1, 3, 5, 10)),
    "cost_optimizer": ("cost.optimizer", (ADAMW, LangevinVariant.SLSAC_ASGLD.value)),
}

TABLE_COLUMNS = [
    "cell",
    "seed",
    "final_cvar",
    "final_mean_cost",
    "eval_return",
    "eval_cost",
    "final_lambda",
]


def _toml_value(value) -> str:
    return f'"{value}"' if isinstance(value, str) else str(value)


def ablation_grid(axis: str) -> list[tuple[str, str]]:
    """(cell label, override) pairs covering one ablation axis."""
    if axis not in AXES:
        raise UsageFailure(f"unknown ablation axis '{axis}' (known: {', '.join(AXES)})")
    key, values = AXES[axis]
    return [(f"{axis}={value}", f"{key}={_toml_value(value)}") for value in values]


@click.command("ablate")
@click.argument("config_path", type=click.Path(path_type=Path))
@click.argument("axis")
@click.option("--override", "overrides", multiple=True, help="Applied before the axis value.")
@click.option(
    "--out-dir",
    envvar=OUTPUT_DIR_ENV,
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
)
@click.option("--parallel", type=click.IntRange(min=1), default=1)
def ablate_command(
    config_path: Path,
    axis: str,
    overrides: tuple[str, ...],
    out_dir: Path | None,
    parallel: int,
):
    """Run CONFIG_PATH across one ablation AXIS and write a comparison table.

    AXIS is one of optimizer, epsilon, aggregation, m, cost_optimizer.
    """
    grid = ablation_grid(axis)
    root = resolve_run_dir(out_dir, f"{config_path.stem}-ablate-{axis}")
    rows = []
    with cli_errors():
        for label, cell_override in grid:
            cell_overrides = [*overrides, cell_override]
            config = load_config(config_path, cell_overrides)
            logger.info(f"[ablate] cell {label}")
            cell_dir = root / label.replace("=", "_")
            for s in run_training(config, cell_dir, cell_overrides, parallel):
                rows.append(
                    {
                        "cell": label,
                        "seed": s.seed,
                        "final_cvar": s.final_cvar,
                        "final_mean_cost": s.final_mean_cost,
                        "eval_return": s.eval_return,
                        "eval_cost": s.eval_cost,
                        "final_lambda": s.final_lambda,
                    }
                )
    table = root / f"ablation_{axis}.csv"
    with table.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=TABLE_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    for row in rows:
        click.echo(
            f"{row['cell']:<28} seed {row['seed']}: cvar={row['final_cvar']} "
            f"return={row['eval_return']}"
        )
    click.echo(f"table: {table}")
