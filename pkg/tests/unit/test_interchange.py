"""
Unit tests for the JSON interchange format.
"""

import json

import pytest

from gsr.core.builders import build_minmax, build_zmod
from gsr.core.interchange import dump_instance, dumps_instance, instance_to_dict, parse_instance
from gsr.core.semiring import Axiom
from gsr.errors import AxiomViolationError, InstanceIOError, MalformedTableError


class TestInterchange:
    """Test cases for writing and parsing instance files."""

    def setup_method(self):
        """Set up test fixtures."""
        self.z8v = build_zmod(8, [0, 2, 4, 6], name="z8v")

    def _write(self, tmp_path, document, name="doc.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    def test_round_trip(self, tmp_path):
        """A written builder instance parses back with identical tables."""
        path = dump_instance(self.z8v, tmp_path / "nested" / "z8v.json")

        loaded = parse_instance(path)

        assert loaded.name == "z8v"
        assert loaded.m_elems == self.z8v.m_elems
        assert loaded.g_elems == self.z8v.g_elems
        assert loaded.same_tables(self.z8v)

    def test_dumps_is_compact_and_stable(self):
        text = dumps_instance(self.z8v)

        assert text.endswith("\n")
        assert " " not in text
        assert text == dumps_instance(build_zmod(8, [6, 4, 2, 0], name="z8v"))
        assert list(json.loads(text)) == ["name", "M", "Gamma", "add_M", "add_Gamma", "prod"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceIOError):
            parse_instance(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")

        with pytest.raises(MalformedTableError):
            parse_instance(path)

    def test_missing_field(self, tmp_path):
        document = instance_to_dict(self.z8v)
        del document["prod"]

        with pytest.raises(MalformedTableError, match="prod"):
            parse_instance(self._write(tmp_path, document))

    def test_index_out_of_range_names_coordinate(self, tmp_path):
        """A prod entry equal to n is reported with its coordinate."""
        document = instance_to_dict(build_minmax(5, 3))
        document["prod"][4][2][3] = 5

        with pytest.raises(MalformedTableError) as info:
            parse_instance(self._write(tmp_path, document))

        assert "prod[4, 2, 3]" in str(info.value)

    def test_unrepresentable_gamma_sum(self, tmp_path):
        """Z_8 with Γ = {2,4,6} has no index for 4+4 = 0."""
        residues = [2, 4, 6]
        position = {r: i for i, r in enumerate(residues)}
        document = {
            "name": "z8-bad",
            "M": [str(i) for i in range(8)],
            "Gamma": [str(r) for r in residues],
            "add_M": [[(a + b) % 8 for b in range(8)] for a in range(8)],
            "add_Gamma": [[position.get((x + y) % 8, 3) for y in residues] for x in residues],
            "prod": [[[(a * x * b) % 8 for b in range(8)] for x in residues] for a in range(8)],
        }

        with pytest.raises(MalformedTableError, match="add_Gamma"):
            parse_instance(self._write(tmp_path, document))

    def test_axiom_violation(self, tmp_path):
        """Well-formed tables breaking an axiom raise with every violation attached."""
        document = instance_to_dict(build_minmax(3, 2))
        document["add_M"][0][1] = 2

        with pytest.raises(AxiomViolationError) as info:
            parse_instance(self._write(tmp_path, document))

        assert Axiom.COMM_M in {v.axiom for v in info.value.violations}
        assert "COMM_M" in str(info.value)
