"""Randomized checks that Clifford reductions cannot beat stabilizer-code reductions.

For a program, a product resource and a pure target state, the fidelity of the whole
program's output (computed from dense matrices over every branch) must not exceed the
larger of

* the best fidelity any single-qubit stabilizer state reaches with the target, and
* the best fidelity among the stabilizer-code reductions extracted from its branches.

Being a mixture of its branches, the output can also never beat its best branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from logging import getLogger

from magicdistill._workers import run_all
from magicdistill.engine.oracle import dense_oracle, with_ancillas
from magicdistill.engine.resource import (
    BlochVector,
    ProductResource,
    ReductionResult,
    stabilizer_state_bound,
)
from magicdistill.program.analysis import (
    ProgramAnalysis,
    analyze_program,
    score_branches,
)
from magicdistill.program.classify import FormB
from magicdistill.program.types import ReductionProgram, branch_matrix
from magicdistill.sampling import (
    random_program,
    random_resource,
    random_unit_vector,
    trial_rng,
)

logger = getLogger(__name__)

THEOREM_TOLERANCE = 1e-9
MAX_TRIAL_QUBITS = 4
DEFAULT_TARGETS = 3


@dataclass(frozen=True)
class TargetCheck:
    target: BlochVector
    program_fidelity: float
    stabilizer_bound: float
    reduction_fidelity: float | None
    branch_fidelity: float
    tolerance: float = THEOREM_TOLERANCE

    @property
    def bound(self) -> float:
        if self.reduction_fidelity is None:
            return self.stabilizer_bound
        return max(self.stabilizer_bound, self.reduction_fidelity)

    @property
    def violates_bound(self) -> bool:
        return self.program_fidelity > self.bound + self.tolerance

    @property
    def violates_convexity(self) -> bool:
        return self.program_fidelity > self.branch_fidelity + self.tolerance

    @property
    def stabilizer_bound_suffices(self) -> bool:
        return self.program_fidelity <= self.stabilizer_bound + self.tolerance


@dataclass(frozen=True)
class TrialResult:
    index: int
    seed: int
    program: ReductionProgram = field(compare=False)
    resource: ProductResource = field(compare=False)
    checks: tuple[TargetCheck, ...] = ()
    success_prob: float = 0.0
    forms: tuple[str, ...] = ()
    skipped: str = ""

    @property
    def violations(self) -> list[TargetCheck]:
        return [c for c in self.checks if c.violates_bound or c.violates_convexity]

    @property
    def replay(self) -> str:
        return f"--seed {self.seed} --trial {self.index}"


def program_output(
    analysis: ProgramAnalysis, rho: ProductResource
) -> ReductionResult | None:
    """The normalized output of every branch together, from dense matrices"""
    program = analysis.program
    density = with_ancillas(rho.density(), program.n_ancilla)
    kraus = [branch_matrix(row.branch) for row in analysis.branches]
    result = dense_oracle(kraus, density)
    return result if isinstance(result, ReductionResult) else None


def check_program(
    program: ReductionProgram,
    rho: ProductResource,
    targets: list[BlochVector],
    tolerance: float = THEOREM_TOLERANCE,
) -> tuple[ProgramAnalysis, ReductionResult | None, list[TargetCheck]]:
    # trials already run on the worker threads
    analysis = analyze_program(program, threads=1)
    if not analysis.exhaustive:
        return analysis, None, []
    output = program_output(analysis, rho)
    if output is None:
        return analysis, None, []
    checks = []
    for target in targets:
        scores = score_branches(analysis, rho, target)
        reductions = [s.fidelity for s in scores if isinstance(s.row.form, FormB)]
        checks.append(
            TargetCheck(
                target=target,
                program_fidelity=output.fidelity(target),
                stabilizer_bound=stabilizer_state_bound(target),
                reduction_fidelity=max(reductions, default=None),
                branch_fidelity=max((s.fidelity for s in scores), default=0.0),
                tolerance=tolerance,
            )
        )
    return analysis, output, checks


def run_trial(
    seed: int,
    index: int,
    max_qubits: int = MAX_TRIAL_QUBITS,
    targets: int = DEFAULT_TARGETS,
) -> TrialResult:
    """Draw and check trial ``index`` of the run seeded with ``seed``"""
    if not 1 <= max_qubits <= MAX_TRIAL_QUBITS:
        msg = f"Trials use between 1 and {MAX_TRIAL_QUBITS} qubits, got {max_qubits}"
        raise ValueError(msg)
    rng = trial_rng(seed, index)
    program = random_program(rng, max_qubits)
    rho = random_resource(rng, program.n_resource)
    points = [random_unit_vector(rng) for _ in range(targets)]
    analysis, output, checks = check_program(program, rho, points)
    forms = tuple(row.form_name or "" for row in analysis.branches)
    if output is None:
        reason = "capped" if not analysis.exhaustive else "zero success probability"
        logger.warning("Skipped trial %d of seed %d: %s", index, seed, reason)
        return TrialResult(index, seed, program, rho, forms=forms, skipped=reason)
    result = TrialResult(
        index, seed, program, rho, tuple(checks), output.success_prob, forms
    )
    for check in result.violations:
        logger.error(
            "Trial %d violates the bound: fidelity %r > %r (replay with %s)",
            index,
            check.program_fidelity,
            check.bound,
            result.replay,
        )
    return result


def verify_theorem(
    seed: int,
    trials: int,
    max_qubits: int = MAX_TRIAL_QUBITS,
    targets: int = DEFAULT_TARGETS,
    only: int | None = None,
) -> list[TrialResult]:
    """Run ``trials`` random trials, or just trial ``only`` to replay it"""
    indices = [only] if only is not None else list(range(trials))
    return run_all(lambda i: run_trial(seed, i, max_qubits, targets), indices)
