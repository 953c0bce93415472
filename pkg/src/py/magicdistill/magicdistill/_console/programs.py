from __future__ import annotations

from typing import Any

import click

from magicdistill._console.report import (
    CliError,
    command_echo,
    emit_report,
    read_input,
)
from magicdistill.config import MAGICDISTILL_DENSE_MAX_QUBITS
from magicdistill.core.tableau import CliffordFactor, CliffordTableau
from magicdistill.distill.axes import magic_state, parse_axis
from magicdistill.engine.codefile import code_digest
from magicdistill.engine.resource import (
    BlochVector,
    ProductResource,
    ReductionResult,
    as_bloch,
    stabilizer_state_bound,
    unit_vector,
)
from magicdistill.program.analysis import (
    BranchAnalysis,
    ProgramAnalysis,
    analyze_program,
    best_branch,
    score_branches,
)
from magicdistill.program.classify import FormA1, FormA2, FormB
from magicdistill.program.completeness import completeness
from magicdistill.program.parser import parse_program
from magicdistill.program.types import (
    CanonicalKraus,
    ProgramError,
    ProgramParseError,
    ReductionProgram,
    ZeroBranch,
)
from magicdistill.theorem import program_output

cap_option = click.option(
    "--cap",
    type=int,
    default=None,
    help="Stop the branch expansion after this many branches.",
)


@click.command(name="normalize")
@click.argument("program_file")
@cap_option
@click.pass_context
def normalize_command(ctx: click.Context, program_file: str, cap: int | None) -> None:
    """Rewrite every branch of a program as ``k C P``.

    Prints the canonical form of each branch in enumeration order, marks branches
    that vanish and checks whether the Kraus operators sum to the identity. Exits
    with status 3 when every branch vanishes.
    """
    program, entry = _load(program_file)
    analysis = _analyze(program, cap, forms=False)
    verdict = completeness(analysis.expansion)
    report = {
        "command": command_echo(ctx),
        "inputs": {"program": entry},
        "exhaustive": analysis.exhaustive,
        "branches": [_normalized_row(row) for row in analysis.branches],
        "result": {
            "branch_count": len(analysis.branches),
            "zero_count": sum(row.is_zero for row in analysis.branches),
            "completeness": {
                "verdict": verdict.verdict,
                "min_eigenvalue": verdict.min_eigenvalue,
                "max_eigenvalue": verdict.max_eigenvalue,
                "reason": verdict.reason,
            },
        },
    }
    emit_report(report)
    _check_not_all_zero(analysis)


@click.command(name="classify")
@click.argument("program_file")
@click.option("--target", required=True, help="Target Bloch vector as x,y,z.")
@click.option("--axis", default="T", show_default=True, help="H, T or x,y,z.")
@click.option("--f", "fidelity", type=float, required=True, help="Input fidelity.")
@cap_option
@click.pass_context
def classify_command(
    ctx: click.Context,
    program_file: str,
    target: str,
    axis: str,
    fidelity: float,
    cap: int | None,
) -> None:
    """Classify every branch and find the one closest to the target.

    The resource is one noisy magic state per resource qubit. Each surviving branch is
    scored by the fidelity of its output with the target and compared against the
    best any stabilizer state can do.
    """
    target_vector = _parse_target(target)
    try:
        state = magic_state(fidelity, parse_axis(axis))
    except ValueError as error:
        raise CliError("INVALID_INPUT", str(error)) from error
    program, entry = _load(program_file)
    analysis = _analyze(program, cap, forms=True)
    rho = ProductResource.copies(state, program.n_resource)
    scores = score_branches(analysis, rho, target_vector)
    by_index = {score.row.branch.index: score for score in scores}
    rows = []
    for row in analysis.branches:
        data = _classified_row(row)
        score = by_index.get(row.branch.index)
        if score is not None:
            data["success_prob"] = score.result.success_prob
            data["out_bloch"] = score.result.out_bloch
            data["fidelity"] = score.fidelity
        rows.append(data)
    best = best_branch(scores)
    bound = stabilizer_state_bound(target_vector)
    reductions = [s.fidelity for s in scores if isinstance(s.row.form, FormB)]
    result: dict[str, Any] = {
        "resource": {"axis": axis, "f": fidelity},
        "target": target_vector,
        "stabilizer_bound": bound,
        "reduction_bound": max([bound, *reductions]),
        "best_branch": None,
        "program_fidelity": None,
    }
    if best is not None:
        result["best_branch"] = {
            "index": best.row.branch.index,
            "branch_id": str(best.row.branch.branch_id),
            "form": best.row.form_name,
            "fidelity": best.fidelity,
        }
    output = _program_output(analysis, rho)
    if output is not None:
        result["program_fidelity"] = output.fidelity(target_vector)
        result["success_prob"] = output.success_prob
    report = {
        "command": command_echo(ctx),
        "inputs": {"program": entry},
        "exhaustive": analysis.exhaustive,
        "branches": rows,
        "result": result,
    }
    emit_report(report)
    _check_not_all_zero(analysis)


def _load(path: str) -> tuple[ReductionProgram, dict[str, str]]:
    text, entry = read_input(path)
    try:
        return parse_program(text), entry
    except ProgramParseError as error:
        raise CliError("PARSE_ERROR", f"{path}: {error}") from error
    except ProgramError as error:
        raise CliError("INVALID_INPUT", f"{path}: {error}") from error


def _analyze(
    program: ReductionProgram, cap: int | None, forms: bool
) -> ProgramAnalysis:
    try:
        return analyze_program(program, cap, forms)
    except ValueError as error:
        raise CliError("INVALID_INPUT", str(error)) from error


def _parse_target(text: str) -> BlochVector:
    try:
        return as_bloch(unit_vector(float(v) for v in text.split(",")))
    except ValueError as error:
        raise CliError("INVALID_INPUT", f"Bad target {text!r}: {error}") from error


def _program_output(
    analysis: ProgramAnalysis, rho: ProductResource
) -> ReductionResult | None:
    if not analysis.exhaustive or analysis.all_zero:
        return None
    if analysis.program.n_total > MAGICDISTILL_DENSE_MAX_QUBITS.current:
        return None
    return program_output(analysis, rho)


def _check_not_all_zero(analysis: ProgramAnalysis) -> None:
    if analysis.exhaustive and analysis.all_zero:
        msg = f"All {len(analysis.branches)} branches of the program vanish"
        raise CliError("ALL_BRANCHES_ZERO", msg)


def _normalized_row(row: BranchAnalysis) -> dict[str, Any]:
    data: dict[str, Any] = {
        "index": row.branch.index,
        "branch_id": str(row.branch.branch_id),
        "form": "zero" if row.is_zero else None,
    }
    canon = row.canonical
    if isinstance(canon, ZeroBranch):
        data["annihilated_by"] = canon.projector.label()
    elif isinstance(canon, CanonicalKraus):
        data.update(_canonical_fields(canon))
    return data


def _classified_row(row: BranchAnalysis) -> dict[str, Any]:
    data = _normalized_row(row)
    data["form"] = row.form_name
    form = row.form
    if isinstance(form, ZeroBranch):
        data["annihilated_by"] = form.projector.label()
    elif isinstance(form, FormA1):
        data["amp_log2"] = form.amp_log2
        data["out_bloch"] = form.out_bloch
    elif isinstance(form, FormA2):
        data["amp_log2"] = form.amp_log2
        data["phase_exponent"] = form.N
        data["out_bloch"] = form.out_bloch
    elif isinstance(form, FormB):
        reduction = form.reduction
        data["amp_log2"] = form.amp_log2
        data["phase_exponent"] = reduction.phase_correction
        data["code"] = reduction.code.labels()
        data["code_digest"] = code_digest(reduction.code)
    return data


def _canonical_fields(canon: CanonicalKraus) -> dict[str, Any]:
    return {
        "scale_log2": canon.scale_log2,
        "weight": canon.weight,
        "phase": canon.phase,
        "projector": [g.label() for g in canon.stab_projector],
        "factors": [_factor_text(f) for f in canon.factors],
        "clifford": _tableau_text(canon.clifford),
    }


def _factor_text(factor: CliffordFactor) -> str:
    if isinstance(factor, CliffordTableau):
        return "tableau " + " ".join(p.label() for p in factor.image_x + factor.image_z)
    return str(factor)


def _tableau_text(c: CliffordTableau) -> dict[str, list[str]]:
    return {
        "x": [p.label() for p in c.image_x],
        "z": [p.label() for p in c.image_z],
    }
