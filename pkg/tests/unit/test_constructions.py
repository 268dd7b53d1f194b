"""
Unit tests for principal and generated constructions.
"""

import pytest

from gsr.core.builders import build_minmax, build_zmod
from gsr.errors import NotGenBiError, NotSubSemiringError
from gsr.ideals.constructions import (
    generated_gen_bi,
    principal_left,
    principal_right,
    sandwich,
    sandwich_relative,
    translate,
)
from gsr.ideals.kinds import IdealKind, has_kind
from gsr.setalg.element_set import ElementSet
from gsr.structure.lattice import enumerate_ideals


class TestConstructions:
    """Test cases for the ideal constructions on Z_8 and the 5-chain."""

    def setup_method(self):
        """Set up test fixtures."""
        self.z8v = build_zmod(8, [0, 2, 4, 6], name="z8v")
        self.minmax = build_minmax(5, 3)

    def test_generated_of_a_point(self):
        """(1) = {1} ∪ 1ΓMΓ1 = {0,1,4}."""
        generated = generated_gen_bi(self.z8v, ElementSet.parse(self.z8v, "1"))

        assert generated.render() == "{0,1,4}"
        assert has_kind(self.z8v, generated, IdealKind.GEN_BI)

    def test_generated_contains_its_set(self):
        s = ElementSet.parse(self.minmax, "2,5")

        generated = generated_gen_bi(self.minmax, s)

        assert s <= generated
        assert generated.render() == "{1,2,3,5}"

    @pytest.mark.parametrize("name", ["z8v", "minmax"])
    def test_generated_is_the_least_superset_ideal(self, name):
        """(A) equals the meet of every enumerated generalized bi-Gamma-ideal containing A."""
        instance = getattr(self, name)
        ideals = [s.mask for s in enumerate_ideals(instance, IdealKind.GEN_BI)]

        for mask in range(1, 1 << instance.n):
            meet = (1 << instance.n) - 1
            for ideal in ideals:
                if mask & ~ideal == 0:
                    meet &= ideal
            assert generated_gen_bi(instance, ElementSet(instance, mask)).mask == meet

    def test_principal_products(self):
        """aΓM and MΓa."""
        assert principal_left(self.z8v, 1).render() == "{0,2,4,6}"
        assert principal_right(self.z8v, 1).render() == "{0,2,4,6}"
        assert principal_left(self.minmax, 3).render() == "{1,2,3}"
        assert principal_right(self.minmax, 0).render() == "{1}"

    def test_sandwich(self):
        assert sandwich(self.z8v, 1).render() == "{0,4}"
        assert sandwich(self.minmax, 4).render() == "{1,2,3}"

    def test_sandwich_relative(self):
        """2ΓTΓ2 ∩ T for the even residues is {0}."""
        evens = ElementSet.parse(self.z8v, "0,2,4,6")

        assert sandwich_relative(self.z8v, evens, 2).render() == "{0}"

    def test_sandwich_relative_needs_subsemiring(self):
        with pytest.raises(NotSubSemiringError) as info:
            sandwich_relative(self.z8v, ElementSet.parse(self.z8v, "1"), 1)

        assert info.value.witness.clause == "sum"

    def test_translate(self):
        """BΓA and AΓB of the ideal {0,4} with any A."""
        b = ElementSet.parse(self.z8v, "0,4")
        a = ElementSet.parse(self.z8v, "1,3")

        left, right = translate(self.z8v, b, a)

        assert left.render() == "{0}"
        assert right.render() == "{0}"

    def test_translate_needs_gen_bi(self):
        with pytest.raises(NotGenBiError):
            translate(self.z8v, ElementSet.parse(self.z8v, "1"), ElementSet.full(self.z8v))
