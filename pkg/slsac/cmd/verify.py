# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from pathlib import Path

import click

from slsac.cmd.common import VerificationFailure
from slsac.verify import run_all


@click.command("verify")
@click.argument(
    "report_path", type=click.Path(dir_okay=False, path_type=Path), default="verify-report.json"
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--critic-fit/--no-critic-fit",
    default=False,
    help="Also train a cost critic on uniform draws and check its CVaR (several minutes).",
)
def verify_command(report_path: Path, seed: int, critic_fit: bool):
    """Run every numerical bound check and write a JSON report to REPORT_PATH."""
    report = run_all(seed, include_critic_fit=critic_fit)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(report.to_json(indent=2, sort_keys=True) + "\n", encoding="utf-8")
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        click.echo(
            f"{check.name:<26} {status}  trials={check.trials:<7} "
            f"violations={check.violations:<4} worst_slack={check.worst_slack:.3e}"
        )
    if not report.passed:
        raise VerificationFailure(f"failed checks: {', '.join(report.failed_names())}")
