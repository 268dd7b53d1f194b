"""
Unit tests for ideal kind predicates and their witnesses.
"""

import pytest

from gsr.core.builders import build_minmax, build_zmod
from gsr.errors import EmptyOperandError
from gsr.ideals.kinds import Derivation, IdealKind, evaluate_sum, has_kind, kinds_of
from gsr.setalg.element_set import ElementSet


class TestIdealKind:
    """Test cases for IdealKind parsing."""

    def test_parse_value_or_name(self):
        assert IdealKind.parse("gen-bi") is IdealKind.GEN_BI
        assert IdealKind.parse("QUASI") is IdealKind.QUASI
        with pytest.raises(ValueError):
            IdealKind.parse("left")

    def test_sum_closure_requirement(self):
        assert [k for k in IdealKind if not k.needs_sum_closure] == [IdealKind.GEN_BI]


class TestHasKind:
    """Test cases for has_kind on the desk instances."""

    def setup_method(self):
        """Set up test fixtures."""
        self.minmax = build_minmax(5, 3)
        self.z8v = build_zmod(8, [0, 2, 4, 6], name="z8v")

    def test_gen_bi_witness(self):
        """{2} fails because 2·1·1·1·2 = 1."""
        s = ElementSet.parse(self.minmax, "2")

        check = has_kind(self.minmax, s, IdealKind.GEN_BI)

        assert not check
        witness = check.witness
        assert witness.clause == "sandwich"
        assert self.minmax.m_elems[witness.element] == "1"
        assert witness.derivations == (Derivation("SGMGS", ((1, 0, 0, 0, 1),)),)
        assert witness.replay(self.minmax, s)
        assert witness.to_dict(self.minmax)["derivations"][0]["words"] == [["2", "1", "1", "1", "2"]]
        assert "2·1·1·1·2 = 1" in witness.describe(self.minmax)

    def test_witness_does_not_replay_on_superset(self):
        s = ElementSet.parse(self.minmax, "2")
        witness = has_kind(self.minmax, s, IdealKind.GEN_BI).witness

        assert not witness.replay(self.minmax, ElementSet.parse(self.minmax, "1,2"))

    def test_sum_clause_first(self):
        """{1} in Z_8 is not sum-closed: 1+1 = 2."""
        s = ElementSet.parse(self.z8v, "1")

        check = has_kind(self.z8v, s, IdealKind.BI)

        assert check.witness.clause == "sum"
        assert check.witness.element == 2
        assert check.witness.derivations[0].words == ((1,), (1,))

    def test_gen_bi_needs_no_sum_closure(self):
        """{0,1,4} is a generalized bi-Gamma-ideal of Z_8 but not a sub-Gamma-semiring."""
        s = ElementSet.parse(self.z8v, "0,1,4")

        assert has_kind(self.z8v, s, IdealKind.GEN_BI)
        assert not has_kind(self.z8v, s, IdealKind.SUB_GSR)

    def test_gamma_ideal(self):
        """{0,4} absorbs products from both sides; {0,2,4,6} does too."""
        assert has_kind(self.z8v, ElementSet.parse(self.z8v, "0,4"), IdealKind.GAMMA_IDEAL)
        assert has_kind(self.z8v, ElementSet.parse(self.z8v, "0,2,4,6"), IdealKind.GAMMA_IDEAL)

    def test_gamma_ideal_witness(self):
        """{4,5} of minmax(5,3) misses 1·1·4 = 1 on the left."""
        check = has_kind(self.minmax, ElementSet.parse(self.minmax, "4,5"), IdealKind.GAMMA_IDEAL)

        assert check.witness.clause == "left"
        assert check.witness.element == 0
        assert check.witness.replay(self.minmax, ElementSet.parse(self.minmax, "4,5"))

    def test_derivation_sums_to_element(self):
        """Every reported derivation evaluates to the offending element."""
        for literal in ("2", "3", "2,3", "4,5", "3,5"):
            s = ElementSet.parse(self.minmax, literal)
            for kind in IdealKind:
                check = has_kind(self.minmax, s, kind)
                if check:
                    continue
                for derivation in check.witness.derivations:
                    assert derivation.matches(self.minmax, s.mask)
                    assert evaluate_sum(self.minmax, derivation.words) == check.witness.element

    def test_empty_set(self):
        with pytest.raises(EmptyOperandError):
            has_kind(self.z8v, ElementSet.empty(self.z8v), IdealKind.BI)

    def test_kinds_of(self):
        """The whole carrier has every kind; kinds are nested."""
        assert kinds_of(self.z8v, ElementSet.full(self.z8v)) == list(IdealKind)
        assert kinds_of(self.z8v, ElementSet.parse(self.z8v, "0,1,4")) == [IdealKind.GEN_BI]
