"""Expand, normalize and classify every branch of a program.

Since ``K = k C P`` with ``C`` unitary, ``K^dagger K = |k|**2 P`` and the probability
of a branch on a product input is a stabilizer-group sum of product expectations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from logging import getLogger
from typing import Literal

from magicdistill._workers import run_all
from magicdistill.core.pauli import product_expectation
from magicdistill.core.stabilizer import iter_group
from magicdistill.engine.resource import (
    ProductResource,
    ReductionResult,
    Undefined,
    make_result,
)
from magicdistill.program.classify import FormB, FormClassification, classify
from magicdistill.program.expand import expand_branches
from magicdistill.program.normalize import normalize
from magicdistill.program.types import (
    BranchExpansion,
    BranchKraus,
    CanonicalKraus,
    ReductionProgram,
    ZeroBranch,
)

logger = getLogger(__name__)

FormName = Literal["zero", "A1", "A2", "B"]


@dataclass(frozen=True)
class BranchAnalysis:
    branch: BranchKraus
    canonical: CanonicalKraus | ZeroBranch
    form: FormClassification | ZeroBranch | None = None

    @property
    def is_zero(self) -> bool:
        return isinstance(self.canonical, ZeroBranch) or isinstance(
            self.form, ZeroBranch
        )

    @property
    def form_name(self) -> FormName | None:
        if self.is_zero:
            return "zero"
        if self.form is None:
            return None
        return self.form.form  # type: ignore[union-attr,return-value]


@dataclass(frozen=True)
class ProgramAnalysis:
    program: ReductionProgram
    expansion: BranchExpansion
    branches: tuple[BranchAnalysis, ...]

    @property
    def exhaustive(self) -> bool:
        return self.expansion.exhaustive

    @property
    def all_zero(self) -> bool:
        return all(b.is_zero for b in self.branches)

    def nonzero(self) -> list[BranchAnalysis]:
        return [b for b in self.branches if not b.is_zero]


def analyze_branch(branch: BranchKraus, forms: bool = True) -> BranchAnalysis:
    canonical = normalize(branch)
    if isinstance(canonical, ZeroBranch) or not forms:
        return BranchAnalysis(branch, canonical)
    return BranchAnalysis(branch, canonical, classify(canonical, branch))


def analyze_program(
    program: ReductionProgram,
    cap: int | None = None,
    forms: bool = True,
    threads: int | None = None,
) -> ProgramAnalysis:
    """Normalize every branch and, when ``forms`` is set, classify it"""
    expansion = expand_branches(program, cap)
    branches = list(expansion.branches)
    rows = run_all(lambda b: analyze_branch(b, forms), branches, threads)
    analysis = ProgramAnalysis(program, expansion, tuple(rows))
    logger.debug(
        "Analyzed %d branches, %d of them zero",
        len(rows),
        sum(row.is_zero for row in rows),
    )
    return analysis


def full_resource(rho: ProductResource, n_ancilla: int) -> ProductResource:
    """``rho`` followed by ``n_ancilla`` qubits in ``|0>``"""
    return ProductResource(rho.bloch + ((0.0, 0.0, 1.0),) * n_ancilla)


def branch_probability(canon: CanonicalKraus, rho: ProductResource) -> float:
    """``tr(K rho K^dagger)`` for the full (resource and ancilla) product input"""
    generators = canon.stab_projector
    elements = iter_group(generators, canon.n)
    total = math.fsum(product_expectation(p, rho) for _, p in elements)
    magnitude = float(canon.weight) * 2 ** float(2 * canon.scale_log2)
    return magnitude * math.ldexp(total, -len(generators))


def branch_output(
    row: BranchAnalysis, rho: ProductResource
) -> ReductionResult | Undefined:
    """The normalized output qubit of one branch on a product resource

    ``rho`` holds the resource qubits only. Form ``B`` branches are evaluated through
    their extracted code, the others prepare a fixed state.
    """
    if row.is_zero:
        return Undefined("zero branch")
    canon, form = row.canonical, row.form
    if not isinstance(canon, CanonicalKraus) or form is None:
        msg = f"Branch {row.branch.branch_id} has not been classified"
        raise ValueError(msg)
    if rho.n != row.branch.n_resource:
        msg = f"Branch takes {row.branch.n_resource} resource qubits, got {rho.n}"
        raise ValueError(msg)
    full = full_resource(rho, row.branch.n_ancilla)
    probability = branch_probability(canon, full)
    if isinstance(form, FormB):
        result = form.reduction.output_state(rho)
        if isinstance(result, Undefined):
            return result
        return make_result(probability, result.out_bloch)
    return make_result(probability, form.out_bloch)  # type: ignore[union-attr]


@dataclass(frozen=True)
class BranchScore:
    row: BranchAnalysis
    result: ReductionResult
    fidelity: float


def score_branches(
    analysis: ProgramAnalysis, rho: ProductResource, target: tuple[float, float, float]
) -> list[BranchScore]:
    """Fidelity of every branch that can succeed on ``rho``, in branch order"""
    scores = []
    for row in analysis.nonzero():
        result = branch_output(row, rho)
        if isinstance(result, ReductionResult):
            scores.append(BranchScore(row, result, result.fidelity(target)))
    return scores


def best_branch(scores: list[BranchScore]) -> BranchScore | None:
    """The highest fidelity, ties going to the lowest branch index"""
    best: BranchScore | None = None
    for score in scores:
        if best is None or score.fidelity > best.fidelity:
            best = score
    return best
