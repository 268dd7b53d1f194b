"""
Integration tests for the small-order census.
"""

import random

import pytest

from gsr.census.generator import enum_gamma_semirings, naive_gamma_semirings
from gsr.census.report import census_report, read_summary, write_census
from gsr.core.interchange import parse_instance
from gsr.core.isomorphism import IsomorphismWitness, are_isomorphic, canonical_key, transport
from gsr.errors import CapExceededError
from gsr.setalg.element_set import ElementSet
from gsr.setalg.operations import gamma_product


def _keys(instances):
    return [x.table_key() for x in instances]


class TestCensusGeneration:
    """Backtracking search against the full-cube filter."""

    @pytest.mark.parametrize("order", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_matches_naive_filter(self, order):
        n, g = order

        assert _keys(enum_gamma_semirings(n, g)) == _keys(naive_gamma_semirings(n, g))

    def test_trivial_carrier_counts(self):
        """With |M| = 1 the classes are those of (Γ, +)."""
        assert len(enum_gamma_semirings(1, 1)) == 1
        assert len(enum_gamma_semirings(1, 2)) == 3

    def test_names_follow_key_order(self):
        classes = enum_gamma_semirings(2, 2)

        assert [x.name for x in classes] == [f"gsr2x2-{i:04d}" for i in range(len(classes))]
        assert _keys(classes) == sorted(_keys(classes))

    def test_workers_do_not_change_result(self):
        assert _keys(enum_gamma_semirings(2, 2, workers=2)) == _keys(enum_gamma_semirings(2, 2, workers=1))

    @pytest.mark.parametrize("seed", range(6))
    def test_relabelled_class_matches_one_record(self, seed):
        """A randomly relabelled class reduces to exactly one census entry."""
        rng = random.Random(seed)
        classes = enum_gamma_semirings(2, 2)
        chosen = rng.choice(classes)
        phi, psi = [0, 1], [0, 1]
        rng.shuffle(phi)
        rng.shuffle(psi)

        copy = transport(chosen, IsomorphismWitness(tuple(phi), tuple(psi)))
        key, _ = canonical_key(copy)

        matches = [c for c in classes if c.table_key() == key]
        assert matches == [chosen]
        assert sum(are_isomorphic(copy, c) is not None for c in classes) == 1

    def test_caps(self):
        with pytest.raises(CapExceededError):
            enum_gamma_semirings(4, 1)
        with pytest.raises(CapExceededError):
            enum_gamma_semirings(2, 2, max_g=1)


class TestCensusReport:
    """Test cases for the census report and its output directory."""

    def setup_method(self):
        """Set up test fixtures."""
        self.report = census_report(max_n=2, max_g=2, workers=1)

    def test_summary_counts(self):
        summary = self.report.summary()

        assert summary["caps"] == {"max_n": 2, "max_g": 2}
        assert summary["total_classes"] == sum(summary["classes_per_order"].values())
        assert summary["classes_per_order"]["1x1"] == 1
        assert summary["classes_per_order"]["1x2"] == 3
        assert [c["order"] for c in summary["classes"]] == sorted(c["order"] for c in summary["classes"])

    def test_trivial_class_is_gb_simple(self):
        summary = self.report.summary()

        assert "gsr1x1-0000" in summary["gb_simple_classes"]

    def test_records_cover_every_statement(self):
        record = self.report.records[0]

        assert len(record.verdicts) == 16
        assert set(record.kind_counts) == {"sub-gsr", "gamma-ideal", "quasi", "bi", "gen-bi"}

    def test_output_is_byte_identical(self, tmp_path):
        """Reruns, with or without workers, write the same files."""
        first = write_census(self.report, tmp_path / "first")
        second = write_census(census_report(max_n=2, max_g=2, workers=2), tmp_path / "second")

        first_files = sorted(p.relative_to(first) for p in first.rglob("*.json"))
        second_files = sorted(p.relative_to(second) for p in second.rglob("*.json"))
        assert first_files == second_files
        for relative in first_files:
            assert (first / relative).read_bytes() == (second / relative).read_bytes()

    def test_written_instances_reload(self, tmp_path):
        root = write_census(self.report, tmp_path)

        loaded = parse_instance(root / "instances" / "gsr2x2-0000.json")

        assert loaded.name == "gsr2x2-0000"
        assert read_summary(root)["total_classes"] == len(self.report.records)


@pytest.mark.slow
class TestDefaultCensus:
    """The census at the configured caps."""

    @pytest.fixture(autouse=True, scope="class")
    def default_report(self, request):
        """One census run shared by the class."""
        request.cls.report = census_report()

    def test_classes_are_canonical_and_distinct(self):
        report = self.report
        keys = [r.instance.table_key() for r in report.records]

        assert len(set(keys)) == len(keys)
        for record in report.records:
            key, _ = canonical_key(record.instance)
            assert key == record.instance.table_key()

    def test_theorems_hold_on_every_class(self):
        referee = {"P52", "P6", "P7", "P71"}

        for record in self.report.records:
            for statement_id, verdict in record.verdicts.items():
                if statement_id not in referee:
                    assert verdict == "PASS", (record.instance.name, statement_id)

    def test_products_reassociate(self):
        """(AΓB)ΓC = AΓ(BΓC) for every subset triple of every class."""
        for record in self.report.records:
            instance = record.instance
            sets = [ElementSet(instance, m) for m in range(1, 1 << instance.n)]
            for a in sets:
                for b in sets:
                    ab = gamma_product(a, None, b)
                    for c in sets:
                        left = gamma_product(ab, None, c)
                        right = gamma_product(a, None, gamma_product(b, None, c))
                        assert left.mask == right.mask, (instance.name, a, b, c)
