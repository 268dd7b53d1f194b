"""
Unit tests for restriction to sub-Gamma-semirings.
"""

import pytest

from gsr.core.builders import build_minmax, build_zmod
from gsr.core.restrict import closure_failure, lift, restrict, restrict_with_embedding
from gsr.errors import EmptyOperandError, NotClosedError, OwnerMismatchError
from gsr.setalg.element_set import ElementSet


def lower(s, restricted, embedding):
    """Preimage of S under the embedding, as a set of `restricted`."""
    position = {outer: inner for inner, outer in enumerate(embedding)}
    return ElementSet.of(restricted, (position[i] for i in s if i in position))


class TestRestrict:
    """Test cases for restrict and its embedding helpers."""

    def setup_method(self):
        """Set up test fixtures."""
        self.minmax = build_minmax(5, 3)
        self.z8v = build_zmod(8, [0, 2, 4, 6], name="z8v")

    def test_restrict_initial_segment(self):
        """{1,2,3} of minmax(5,3) is minmax(3,3)."""
        s = ElementSet.parse(self.minmax, "{1,2,3}")

        restricted = restrict(self.minmax, s)

        assert restricted.name == "minmax(5,3)|{1,2,3}"
        assert restricted.m_elems == ("1", "2", "3")
        assert restricted.g_elems == self.minmax.g_elems
        assert restricted.same_tables(build_minmax(3, 3))

    def test_not_closed_under_product(self):
        """{1,3} misses 3·2·3 = 2."""
        s = ElementSet.parse(self.minmax, "1,3")

        with pytest.raises(NotClosedError) as info:
            restrict(self.minmax, s)

        assert info.value.witness == ("product", (2, 1, 2), 1)
        assert "prod(3,2,3) = 2" in str(info.value)

    def test_not_closed_under_sum(self):
        """{1} in Z_8 misses 1+1 = 2; sums are reported first."""
        assert closure_failure(self.z8v, 0b10) == ("sum", (1, 1), 2)

    def test_empty_set(self):
        with pytest.raises(EmptyOperandError):
            restrict(self.minmax, ElementSet.empty(self.minmax))

    def test_foreign_set(self):
        """Sets of another instance are rejected."""
        other = build_minmax(5, 3)

        with pytest.raises(OwnerMismatchError):
            restrict(self.minmax, ElementSet.full(other))

    def test_lift_and_lower(self):
        """The embedding carries sets both ways."""
        s = ElementSet.parse(self.z8v, "0,4")
        restricted, embedding = restrict_with_embedding(self.z8v, s)

        assert embedding == (0, 4)
        assert restricted.n == 2
        assert lift(ElementSet.of(restricted, [1]), self.z8v, embedding).render() == "{4}"
        lowered = lower(ElementSet.parse(self.z8v, "0,1,4"), restricted, embedding)
        assert lowered.members() == (0, 1)
