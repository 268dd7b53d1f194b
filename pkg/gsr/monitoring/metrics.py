"""
Prometheus metrics for verification, validation and census runs.

The engine is a batch tool, so metrics are kept in a private registry and
written out in text exposition format on request instead of being served.
"""

import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import structlog
from prometheus_client import (
    CollectorRegistry,
    Counter,
    Histogram,
    generate_latest,
    write_to_textfile,
)

logger = structlog.get_logger(__name__)


class EngineMetrics:
    """Counters and histograms for one engine process."""

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        self.registry = registry or CollectorRegistry()

        self.statements_checked = Counter(
            "gsr_statements_checked_total",
            "Statement verifications completed",
            ["statement", "verdict"],
            registry=self.registry,
        )
        self.assignments_examined = Counter(
            "gsr_assignments_examined_total",
            "Bound-variable assignments examined by the harness",
            ["statement"],
            registry=self.registry,
        )
        self.verify_duration = Histogram(
            "gsr_verify_duration_seconds",
            "Time spent verifying one statement on one instance",
            ["statement"],
            registry=self.registry,
        )
        self.census_classes = Counter(
            "gsr_census_classes_total",
            "Isomorphism classes emitted by the census",
            ["order"],
            registry=self.registry,
        )
        self.axiom_checks = Counter(
            "gsr_axiom_checks_total",
            "Axiom validations performed",
            ["outcome"],
            registry=self.registry,
        )

    def record_verification(
        self, statement: str, verdict: str, examined: int, duration: float
    ) -> None:
        self.statements_checked.labels(statement=statement, verdict=verdict).inc()
        self.assignments_examined.labels(statement=statement).inc(examined)
        self.verify_duration.labels(statement=statement).observe(duration)

    def record_census_class(self, n: int, g: int) -> None:
        self.census_classes.labels(order=f"{n}x{g}").inc()

    def record_axiom_check(self, valid: bool) -> None:
        self.axiom_checks.labels(outcome="valid" if valid else "invalid").inc()

    @contextmanager
    def timed(self) -> Iterator[list[float]]:
        """Yield a one-slot list that receives the elapsed seconds on exit."""
        slot = [0.0]
        start = time.perf_counter()
        try:
            yield slot
        finally:
            slot[0] = time.perf_counter() - start

    def exposition(self) -> bytes:
        return generate_latest(self.registry)

    def write(self, path: Path) -> None:
        """Write the registry in Prometheus text format."""
        path.parent.mkdir(parents=True, exist_ok=True)
        write_to_textfile(str(path), self.registry)
        logger.info("metrics_written", path=str(path))


_default_metrics: Optional[EngineMetrics] = None


def get_metrics() -> EngineMetrics:
    """Process-wide metrics instance."""
    global _default_metrics
    if _default_metrics is None:
        _default_metrics = EngineMetrics()
    return _default_metrics
