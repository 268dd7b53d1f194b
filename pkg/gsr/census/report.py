"""
Census records, the aggregate summary and the census output directory.

The output directory holds instances/<name>.json per class in the
interchange format and summary.json. Nothing run-dependent (timings,
worker counts, paths) goes into either, so repeated runs are byte-identical.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import structlog
from joblib import Parallel, delayed

from gsr.census.generator import enum_gamma_semirings
from gsr.config.settings import get_settings
from gsr.core.interchange import dumps_instance
from gsr.core.semiring import GammaSemiring
from gsr.errors import InstanceIOError
from gsr.ideals.kinds import IdealKind
from gsr.structure.harness import VerificationReport, run_statement
from gsr.structure.lattice import is_gb_simple
from gsr.structure.scan import masks_of_kind
from gsr.structure.statements import Budget, StatementRegistry

logger = structlog.get_logger(__name__)

# Statements whose failures the summary lists with witnesses.
REFEREE_STATEMENTS = ("P52", "P6", "P7", "P71")


@dataclass
class CensusRecord:
    """One isomorphism class with its ideal statistics and statement verdicts."""
    instance: GammaSemiring
    order: Tuple[int, int]
    kind_counts: Dict[str, int]
    gb_simple: bool
    verdicts: Dict[str, str]
    failures: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.instance.name,
            "order": list(self.order),
            "kind_counts": dict(self.kind_counts),
            "gb_simple": self.gb_simple,
            "verdicts": dict(self.verdicts),
        }


@dataclass
class CensusReport:
    records: List[CensusRecord]
    max_n: int
    max_g: int

    def summary(self) -> Dict[str, Any]:
        """Aggregate counts, GB-simple classes and statement failures."""
        per_order: Dict[str, int] = {}
        failing: Dict[str, int] = {}
        referee: List[Dict[str, Any]] = []
        for record in self.records:
            label = f"{record.order[0]}x{record.order[1]}"
            per_order[label] = per_order.get(label, 0) + 1
            for statement_id, verdict in record.verdicts.items():
                if verdict == "FAIL":
                    failing[statement_id] = failing.get(statement_id, 0) + 1
            for statement_id in REFEREE_STATEMENTS:
                for witness in record.failures.get(statement_id, []):
                    referee.append({"class": record.instance.name, "statement": statement_id, "witness": witness})
        return {
            "caps": {"max_n": self.max_n, "max_g": self.max_g},
            "total_classes": len(self.records),
            "classes_per_order": per_order,
            "gb_simple_classes": [r.instance.name for r in self.records if r.gb_simple],
            "failing_classes_per_statement": dict(sorted(failing.items())),
            "referee_failures": referee,
            "classes": [r.to_dict() for r in self.records],
        }


def census_record(instance: GammaSemiring, budget: Budget, statements: Optional[List[str]] = None) -> CensusRecord:
    """Ideal counts, GB-simplicity and verdicts of one class."""
    kind_counts = {kind.value: len(masks_of_kind(instance, kind)) for kind in IdealKind}
    ids = statements or StatementRegistry.available()
    reports: List[VerificationReport] = [run_statement(instance, sid, budget) for sid in ids]
    failures = {
        r.statement_id: [w.to_dict() for w in r.witnesses] for r in reports if r.failed
    }
    return CensusRecord(
        instance=instance,
        order=(instance.n, instance.g),
        kind_counts=kind_counts,
        gb_simple=is_gb_simple(instance).simple,
        verdicts={r.statement_id: r.verdict.value for r in reports},
        failures=failures,
    )


def census_report(
    max_n: Optional[int] = None,
    max_g: Optional[int] = None,
    workers: Optional[int] = None,
    statements: Optional[List[str]] = None,
) -> CensusReport:
    """Every class with n <= max_n, g <= max_g, in (n, g, key) order.

    Raises:
        CapExceededError: caps above the configured census caps
    """
    settings = get_settings().census
    top_n = max_n if max_n is not None else settings.max_n
    top_g = max_g if max_g is not None else settings.max_g
    n_jobs = workers if workers is not None else settings.workers
    budget = Budget.full()

    records: List[CensusRecord] = []
    for n in range(1, top_n + 1):
        for g in range(1, top_g + 1):
            classes = enum_gamma_semirings(n, g, workers=n_jobs, max_n=top_n, max_g=top_g)
            if n_jobs > 1 and len(classes) > 1:
                order_records = Parallel(n_jobs=n_jobs)(
                    delayed(census_record)(inst, budget, statements) for inst in classes
                )
            else:
                order_records = [census_record(inst, budget, statements) for inst in classes]
            records.extend(order_records)
    logger.info("census_complete", max_n=top_n, max_g=top_g, classes=len(records))
    return CensusReport(records, top_n, top_g)


def write_census(report: CensusReport, out_dir: Union[str, Path]) -> Path:
    """Write instances/<name>.json per class and summary.json."""
    root = Path(out_dir)
    try:
        (root / "instances").mkdir(parents=True, exist_ok=True)
        for record in report.records:
            path = root / "instances" / f"{record.instance.name}.json"
            path.write_text(dumps_instance(record.instance), encoding="utf-8")
        summary = json.dumps(report.summary(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        (root / "summary.json").write_text(summary, encoding="utf-8")
    except OSError as exc:
        raise InstanceIOError(f"Cannot write census to {root}: {exc}") from exc
    logger.info("census_written", path=str(root), classes=len(report.records))
    return root


def read_summary(out_dir: Union[str, Path]) -> Dict[str, Any]:
    path = Path(out_dir) / "summary.json"
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceIOError(f"Cannot read census summary {path}: {exc}") from exc
