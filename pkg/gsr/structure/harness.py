"""
Statement verification harness.

Runs registered statements against one instance, collects counterexamples
in canonical order and renders reports. Parallel runs split the statement
list across joblib workers and merge in registry order, so the output does
not depend on the worker count.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import structlog
from joblib import Parallel, delayed

from gsr.config.settings import get_settings
from gsr.core.semiring import GammaSemiring
from gsr.monitoring.metrics import get_metrics
from gsr.setalg.element_set import ElementSet
from gsr.structure.statements import Assignment, Budget, Run, StatementRegistry

logger = structlog.get_logger(__name__)


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class Witness:
    """One counterexample assignment, raw and rendered."""
    bindings: Assignment
    labels: Dict[str, str] = field(compare=False)
    detail: Dict[str, Any] = field(compare=False, default_factory=dict)

    def render(self) -> str:
        if not self.labels:
            shown = ", ".join(f"{k}={v}" for k, v in self.detail.items())
            return shown or "(no bound variables)"
        return ", ".join(f"{k}={v}" for k, v in self.labels.items())

    def to_dict(self) -> Dict[str, Any]:
        return {"bindings": dict(self.labels), "detail": dict(self.detail)}


@dataclass
class VerificationReport:
    """Outcome of one statement on one instance."""
    statement_id: str
    instance: str
    budget: Dict[str, Any]
    verdict: Verdict
    counterexamples: int = 0
    examined: int = 0
    duration: float = 0.0
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    def render_line(self) -> str:
        """Id, verdict, counterexample count and first witness."""
        line = f"{self.statement_id:<14} {self.verdict.value:<16} counterexamples={self.counterexamples}"
        if self.witnesses:
            line += f"  first: {self.witnesses[0].render()}"
        return line

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.statement_id,
            "verdict": self.verdict.value,
            "counterexamples": self.counterexamples,
            "examined": self.examined,
            "budget": dict(self.budget),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _label(instance: GammaSemiring, name: str, value: int) -> str:
    if name[0].islower():
        return instance.m_elems[value]
    return ElementSet(instance, value).render()


def _make_witness(run: Run, statement_id: str, assignment: Assignment) -> Witness:
    statement = StatementRegistry.get(statement_id)
    labels = {name: _label(run.instance, name, value) for name, value in assignment}
    return Witness(assignment, labels, statement.explain(run, assignment))


def run_statement(instance: GammaSemiring, statement_id: str, budget: Budget) -> VerificationReport:
    """Check one statement without recording it in the metrics registry."""
    statement = StatementRegistry.get(statement_id)
    run = Run(instance, budget)
    report = VerificationReport(statement_id, instance.name, budget.describe(instance.n), Verdict.PASS)
    with get_metrics().timed() as elapsed:
        for assignment in statement.assignments(run):
            report.examined += 1
            if not statement.holds(run, assignment):
                report.counterexamples += 1
                if len(report.witnesses) < budget.max_witnesses:
                    report.witnesses.append(_make_witness(run, statement_id, assignment))
            if not run.full and report.examined >= budget.sample_count:
                run.truncated = True
                break
    report.duration = elapsed[0]
    if report.counterexamples:
        report.verdict = Verdict.FAIL
    elif run.truncated:
        report.verdict = Verdict.BUDGET_EXHAUSTED
    return report


def _record(report: VerificationReport) -> None:
    get_metrics().record_verification(
        report.statement_id, report.verdict.value, report.examined, report.duration
    )
    log = logger.warning if report.verdict is Verdict.BUDGET_EXHAUSTED else logger.info
    log(
        "statement_verified",
        instance=report.instance,
        statement=report.statement_id,
        verdict=report.verdict.value,
        counterexamples=report.counterexamples,
        examined=report.examined,
        seconds=round(report.duration, 4),
    )


def verify(instance: GammaSemiring, statement_id: str, budget: Optional[Budget] = None) -> VerificationReport:
    """Check one registered statement extensionally.

    Raises:
        UnknownStatementError: statement_id is not registered
    """
    report = run_statement(instance, statement_id, budget or Budget.from_settings())
    _record(report)
    return report


def verify_many(
    instance: GammaSemiring,
    statement_ids: Sequence[str],
    budget: Optional[Budget] = None,
    workers: Optional[int] = None,
) -> List[VerificationReport]:
    """Check several statements, optionally across joblib workers."""
    ids = StatementRegistry.resolve(list(statement_ids))
    chosen = budget or Budget.from_settings()
    n_jobs = workers if workers is not None else get_settings().structure.workers
    if n_jobs > 1 and len(ids) > 1:
        reports = Parallel(n_jobs=n_jobs)(
            delayed(run_statement)(instance, statement_id, chosen) for statement_id in ids
        )
    else:
        reports = [run_statement(instance, statement_id, chosen) for statement_id in ids]
    for report in reports:
        _record(report)
    return list(reports)


def replay(instance: GammaSemiring, statement_id: str, witness: Witness, budget: Optional[Budget] = None) -> bool:
    """True when the witness still violates the statement on `instance`."""
    statement = StatementRegistry.get(statement_id)
    run = Run(instance, budget or Budget.from_settings())
    return not statement.holds(run, witness.bindings)


def summary_document(instance: GammaSemiring, reports: Sequence[VerificationReport]) -> Dict[str, Any]:
    """Machine-readable report: instance name plus one entry per statement."""
    return {"instance": instance.name, "statements": [r.to_dict() for r in reports]}
