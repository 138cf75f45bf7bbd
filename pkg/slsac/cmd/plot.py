# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import csv
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import click
import matplotlib
import numpy as np
from loguru import logger

from slsac.cmd.common import UsageFailure
from slsac.cmd.train import CONFIG_SNAPSHOT
from slsac.errors import ConfigError
from slsac.runconfig import config_from_text
from slsac.trainer import read_metrics

matplotlib.use("Agg")
# pylint: disable-next=wrong-import-position
import matplotlib.pyplot as plt  # noqa: E402

CSV_COLUMNS = ["step", "return_mean", "return_std", "cost_mean", "cost_std", "seeds"]
DEFAULT_BETA = 25.0


@dataclass
class Series:
    """Per-bin statistics across seeds; bins without any episode hold NaN."""

    steps: np.ndarray
    return_mean: np.ndarray
    return_std: np.ndarray
    cost_mean: np.ndarray
    cost_std: np.ndarray
    seeds: np.ndarray


def bin_episodes(records: list[dict], edges: np.ndarray, key: str) -> np.ndarray:
    """Mean of ``key`` over episode records whose step falls in (edges[j], edges[j + 1]]."""
    episodes = [r for r in records if r.get("kind") == "episode" and key in r]
    out = np.full(len(edges) - 1, np.nan)
    if not episodes:
        return out
    steps = np.array([r["step"] for r in episodes], dtype=np.float64)
    values = np.array([r[key] for r in episodes], dtype=np.float64)
    idx = np.clip(np.searchsorted(edges, steps, side="left") - 1, 0, len(edges) - 2)
    for j in range(len(edges) - 1):
        mask = idx == j
        if mask.any():
            out[j] = values[mask].mean()
    return out


def _stats(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    present = ~np.isnan(rows)
    counts = present.sum(axis=0)
    filled = np.where(present, rows, 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = filled.sum(axis=0) / counts
        sq = np.where(present, (rows - mean) ** 2, 0.0).sum(axis=0) / counts
    return mean, np.sqrt(sq), counts


def aggregate_series(per_seed: Sequence[list[dict]], bins: int) -> Series:
    """Bin each seed's episode records on a shared step grid, then mean and std over seeds."""
    last = max(
        (r["step"] for records in per_seed for r in records if r.get("kind") == "episode"),
        default=0,
    )
    if last <= 0:
        raise UsageFailure("no episode records to plot")
    edges = np.linspace(0.0, float(last), bins + 1)
    returns = np.stack([bin_episodes(r, edges, "episode_return") for r in per_seed])
    costs = np.stack([bin_episodes(r, edges, "episode_cost") for r in per_seed])
    r_mean, r_std, counts = _stats(returns)
    c_mean, c_std, _ = _stats(costs)
    return Series(edges[1:], r_mean, r_std, c_mean, c_std, counts)


def write_csv(series: Series, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for j, step in enumerate(series.steps):
            if series.seeds[j] == 0:
                continue
            writer.writerow(
                [
                    repr(float(step)),
                    repr(float(series.return_mean[j])),
                    repr(float(series.return_std[j])),
                    repr(float(series.cost_mean[j])),
                    repr(float(series.cost_std[j])),
                    int(series.seeds[j]),
                ]
            )


def write_svg(series: Series, beta: float, path: Path) -> None:
    keep = series.seeds > 0
    steps = series.steps[keep]
    fig, (ax_r, ax_c) = plt.subplots(1, 2, figsize=(11, 4))
    for ax, mean, std, label in (
        (ax_r, series.return_mean[keep], series.return_std[keep], "episode return"),
        (ax_c, series.cost_mean[keep], series.cost_std[keep], "episode cost"),
    ):
        ax.plot(steps, mean, lw=1.5)
        ax.fill_between(steps, mean - std, mean + std, alpha=0.25)
        ax.set_xlabel("environment steps")
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
    ax_c.axhline(beta, color="black", lw=1.0, ls="--", label=f"beta = {beta:g}")
    ax_c.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def beta_for(metrics_path: Path) -> float:
    """The cost limit from the run's config snapshot next to the seed directory, if any."""
    snapshot = metrics_path.parent.parent / CONFIG_SNAPSHOT
    if snapshot.is_file():
        try:
            return config_from_text(snapshot.read_text(encoding="utf-8")).constraint.beta
        except ConfigError:
            logger.warning(f"[plot] unreadable config snapshot {snapshot}")
    return DEFAULT_BETA


@click.command("plot")
@click.argument(
    "metrics_paths", nargs=-1, required=True, type=click.Path(dir_okay=False, path_type=Path)
)
@click.option(
    "--out",
    "out_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="SVG path; the aggregated CSV is written next to it with a .csv suffix.",
)
@click.option("--beta", type=float, default=None, help="Cost limit line; default from the run.")
@click.option("--bins", type=click.IntRange(min=1), default=50, show_default=True)
def plot_command(
    metrics_paths: tuple[Path, ...], out_path: Path, beta: float | None, bins: int
):
    """Plot return and cost curves (mean and std over METRICS_PATHS) with the cost limit."""
    per_seed = []
    skipped = 0
    for path in metrics_paths:
        if not path.is_file():
            raise UsageFailure(f"metrics file not found: {path}")
        records, malformed = read_metrics(path)
        skipped += malformed
        per_seed.append(records)
    if skipped:
        logger.warning(f"[plot] skipped {skipped} malformed metrics line(s)")
    series = aggregate_series(per_seed, bins)
    if beta is None:
        beta = beta_for(metrics_paths[0])
    out_path.parent.mkdir(parents=True, exist_ok=True)
    svg_path = out_path.with_suffix(".svg")
    csv_path = out_path.with_suffix(".csv")
    write_svg(series, beta, svg_path)
    write_csv(series, csv_path)
    click.echo(f"wrote {svg_path} and {csv_path} ({skipped} malformed line(s) skipped)")
