"""
Unit tests for budgets, the statement registry and individual statements.
"""

import pytest

from gsr.config.settings import reset_settings_cache
from gsr.core.builders import build_minmax, build_zmod
from gsr.errors import UnknownStatementError
from gsr.ideals.kinds import IdealKind
from gsr.structure.statements import Budget, Run, StatementRegistry

ALL_IDS = [
    "R18a",
    "R18b",
    "CONSTR",
    "INTERSECT",
    "SMALLEST",
    "SANDWICH_REL",
    "P52",
    "P6",
    "P7",
    "P71",
    "P8",
    "SIMPLE_EQ",
    "L38",
    "TRANSLATE",
    "MIN_EQ_SIMPLE",
    "T311",
]


class TestBudget:
    """Test cases for Budget."""

    def test_defaults_from_settings(self):
        assert Budget.from_settings() == Budget(12, 1_000_000, 100)
        assert Budget.parse(None) == Budget.from_settings()

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("GSR_STRUCTURE__SAMPLE_COUNT", "77")
        reset_settings_cache()

        assert Budget.from_settings().sample_count == 77

    def test_parse(self):
        assert Budget.parse("full").enumerates(10_000)
        assert Budget.parse("500").sample_count == 500
        with pytest.raises(ValueError):
            Budget.parse("0")
        with pytest.raises(ValueError):
            Budget.parse("lots")

    def test_describe(self):
        budget = Budget(4, 10, 5)

        assert budget.describe(4) == {"mode": "full"}
        assert budget.describe(5) == {"mode": "sampled", "sample_count": 10}


class TestRegistry:
    """Test cases for StatementRegistry."""

    def test_registration_order(self):
        assert StatementRegistry.available() == ALL_IDS

    def test_unknown(self):
        with pytest.raises(UnknownStatementError) as info:
            StatementRegistry.get("P99")

        assert "P52" in str(info.value)
        with pytest.raises(LookupError):
            StatementRegistry.resolve(["R18a", "P99"])

    def test_resolve(self):
        assert StatementRegistry.resolve(["ALL"]) == ALL_IDS
        assert StatementRegistry.resolve(["all", "P8"]) == ALL_IDS
        assert StatementRegistry.resolve(["P8", "R18a", "P8"]) == ["P8", "R18a"]


class TestRun:
    """Test cases for the quantifier helpers."""

    def setup_method(self):
        """Set up test fixtures."""
        self.z8v = build_zmod(8, [0, 2, 4, 6], name="z8v")

    def test_subsets_in_mask_order(self):
        run = Run(self.z8v, Budget())

        assert list(run.subsets(0b10001, 0b1010101)) == [17, 21, 81, 85]
        assert sum(1 for _ in run.subsets()) == 255

    def test_sampled_subsets_truncate(self):
        run = Run(self.z8v, Budget(4, 10, 5))

        assert list(run.subsets()) == list(range(1, 11))
        assert run.truncated

    def test_products(self):
        run = Run(self.z8v, Budget())
        point = 0b10

        assert run.left_product(point) == 0b1010101
        assert run.sandwich(point) == 0b10001
        assert run.generated(point) == 0b10011

    def test_gb_simple_within(self):
        run = Run(self.z8v, Budget())

        assert run.gb_simple_within(0b1)
        assert not run.gb_simple_within(0b10001)

    def test_statement_bodies(self):
        """Bodies decide single assignments; hypotheses failing make them vacuous."""
        run = Run(self.z8v, Budget())
        p52 = StatementRegistry.get("P52")

        assert not p52.holds(run, (("T", 0b1010101), ("A", 0b10101)))
        assert p52.holds(run, (("T", 0b1010101), ("A", 0b1010101)))
        # T = {0,1} is not a sub-Gamma-semiring
        assert p52.holds(run, (("T", 0b11), ("A", 0b1)))

    def test_minmax_family(self):
        run = Run(build_minmax(5, 3), Budget())

        assert run.family(IdealKind.GEN_BI) == [1, 3, 7, 15, 23, 31]
