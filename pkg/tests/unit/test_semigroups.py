"""
Unit tests for commutative semigroup enumeration.
"""

import numpy as np
import pytest

from gsr.census.semigroups import canonical_table, enum_comm_semigroups, labelled_comm_semigroups, table_key
from gsr.errors import CapExceededError


class TestSemigroups:
    """Test cases for labelled and canonical enumeration."""

    def test_labelled_order_two(self):
        """Six commutative associative tables on {0,1}."""
        tables = labelled_comm_semigroups(2)

        assert len(tables) == 6
        assert [table_key(t) for t in tables] == sorted(table_key(t) for t in tables)

    def test_classes(self):
        """1, 3 and 12 classes for orders 1 to 3."""
        assert len(enum_comm_semigroups(1)) == 1
        assert len(enum_comm_semigroups(2)) == 3
        assert len(enum_comm_semigroups(3)) == 12

    def test_order_two_representatives(self):
        keys = [table_key(t) for t in enum_comm_semigroups(2)]

        assert keys == [(0, 0, 0, 0), (0, 0, 0, 1), (0, 1, 1, 0)]

    def test_canonical_table_is_least(self):
        max_on_two = np.array([[0, 1], [1, 1]])

        assert table_key(canonical_table(max_on_two)) == (0, 0, 0, 1)

    def test_tables_are_read_only(self):
        with pytest.raises(ValueError):
            enum_comm_semigroups(2)[0][0, 0] = 1

    def test_cap(self):
        with pytest.raises(CapExceededError):
            enum_comm_semigroups(5)
        with pytest.raises(CapExceededError):
            enum_comm_semigroups(0)
