from __future__ import annotations

from collections import Counter
from typing import Any

import click

from magicdistill._console.report import CliError, command_echo, emit_report
from magicdistill.theorem import (
    DEFAULT_TARGETS,
    MAX_TRIAL_QUBITS,
    TargetCheck,
    TrialResult,
    verify_theorem,
)


@click.command(name="verify-theorem")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option(
    "--max-qubits",
    type=int,
    default=MAX_TRIAL_QUBITS,
    show_default=True,
    help="Largest register (resource plus ancilla qubits) a trial may use.",
)
@click.option(
    "--targets",
    type=int,
    default=DEFAULT_TARGETS,
    show_default=True,
    help="Random target states checked per trial.",
)
@click.option("--trial", type=int, default=None, help="Replay only this trial.")
@click.pass_context
def verify_theorem_command(
    ctx: click.Context,
    seed: int,
    trials: int,
    max_qubits: int,
    targets: int,
    trial: int | None,
) -> None:
    """Check random Clifford reductions against stabilizer-code reductions.

    Every trial draws a program, a product resource and target states from the seed.
    The fidelity of the whole program may not exceed the best stabilizer state or the
    best code reduction found among its branches. Exits with status 4 on a violation,
    listing the arguments that replay it.
    """
    if trials < 0 or targets < 1 or (trial is not None and trial < 0):
        msg = "--trials and --trial must be non-negative and --targets positive"
        raise CliError("INVALID_INPUT", msg)
    try:
        results = verify_theorem(seed, trials, max_qubits, targets, only=trial)
    except ValueError as error:
        raise CliError("INVALID_INPUT", str(error)) from error
    violations = [_violation(r, c) for r in results for c in r.violations]
    checks = [c for r in results for c in r.checks]
    forms = Counter(form for r in results for form in r.forms)
    report = {
        "command": command_echo(ctx),
        "inputs": {},
        "result": {
            "seed": seed,
            "trials": len(results),
            "skipped": sum(bool(r.skipped) for r in results),
            "checks": len(checks),
            "forms": dict(sorted(forms.items())),
            "stabilizer_bound_suffices": sum(
                c.stabilizer_bound_suffices for c in checks
            ),
            "max_excess": max(
                (c.program_fidelity - c.bound for c in checks), default=None
            ),
            "violations": violations,
        },
    }
    emit_report(report)
    if violations:
        replays = "; ".join(v["replay"] for v in violations)
        msg = f"{len(violations)} checks exceed the bound (replay with {replays})"
        raise CliError("THEOREM_VIOLATION", msg)


def _violation(result: TrialResult, check: TargetCheck) -> dict[str, Any]:
    return {
        "trial": result.index,
        "replay": result.replay,
        "target": check.target,
        "program_fidelity": check.program_fidelity,
        "bound": check.bound,
        "branch_fidelity": check.branch_fidelity,
    }
