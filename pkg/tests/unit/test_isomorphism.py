"""
Unit tests for isomorphism testing and canonical forms.
"""

import random

import numpy as np
import pytest

from gsr.core.builders import build_minmax, build_zmod
from gsr.core.isomorphism import (
    IsomorphismWitness,
    are_isomorphic,
    canonical_form,
    canonical_key,
    table_automorphisms,
    transport,
)


def _random_witness(rng, n, g):
    m_perm = list(range(n))
    g_perm = list(range(g))
    rng.shuffle(m_perm)
    rng.shuffle(g_perm)
    return IsomorphismWitness(tuple(m_perm), tuple(g_perm))


class TestIsomorphism:
    """Test cases for are_isomorphic and transport."""

    def setup_method(self):
        """Set up test fixtures."""
        self.minmax = build_minmax(5, 3)
        self.shuffle = IsomorphismWitness((2, 0, 1, 4, 3), (1, 0, 2))
        self.copy = transport(self.minmax, self.shuffle, name="shuffled")

    def test_transport_moves_labels(self):
        """Element a of the source sits at phi[a] in the copy."""
        assert self.copy.name == "shuffled"
        assert self.copy.m_elems == ("2", "3", "1", "5", "4")
        assert self.copy.g_elems == ("2", "1", "3")
        assert not self.copy.same_tables(self.minmax)

    def test_finds_witness(self):
        """The witness transports one instance onto the other's tables."""
        witness = are_isomorphic(self.minmax, self.copy)

        assert witness is not None
        assert transport(self.minmax, witness).same_tables(self.copy)

    def test_identity_on_equal_tables(self):
        witness = are_isomorphic(self.minmax, build_minmax(5, 3))

        assert witness == IsomorphismWitness.identity(5, 3)

    def test_non_isomorphic(self):
        """Z_3 with zero product is not the 3-chain with constant product."""
        assert are_isomorphic(build_zmod(3, [0]), build_minmax(3, 1)) is None
        assert are_isomorphic(self.minmax, build_minmax(5, 2)) is None

    def test_idempotent_sum_is_not_cyclic(self):
        """Max on two elements is idempotent, Z_2 addition is not; both have a constant product."""
        chain = build_minmax(2, 1)
        cyclic = build_zmod(2, [0])

        assert are_isomorphic(chain, cyclic) is None
        assert are_isomorphic(cyclic, chain) is None

    def test_swap_of_two_chain(self):
        chain = build_minmax(2, 1)
        swapped = transport(chain, IsomorphismWitness((1, 0), (0,)))

        assert are_isomorphic(chain, swapped) == IsomorphismWitness((1, 0), (0,))

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_symmetric_and_transitive(self, seed):
        """Witnesses exist both ways and across a chain of transported copies."""
        rng = random.Random(seed)
        first = transport(self.minmax, _random_witness(rng, 5, 3))
        second = transport(first, _random_witness(rng, 5, 3))

        forward = are_isomorphic(self.minmax, first)
        backward = are_isomorphic(first, self.minmax)
        onward = are_isomorphic(first, second)
        through = are_isomorphic(self.minmax, second)

        assert None not in (forward, backward, onward, through)
        assert transport(first, backward).same_tables(self.minmax)
        assert transport(self.minmax, forward.compose(onward)).same_tables(second)
        assert transport(self.minmax, through).same_tables(second)

    def test_inverse_and_compose(self):
        """A witness composed with its inverse is the identity."""
        assert self.shuffle.compose(self.shuffle.inverse()) == IsomorphismWitness.identity(5, 3)
        back = transport(self.copy, self.shuffle.inverse())
        assert back.same_tables(self.minmax)
        assert back.m_elems == self.minmax.m_elems

    def test_witness_to_dict(self):
        assert self.shuffle.to_dict() == {"phi": [2, 0, 1, 4, 3], "psi": [1, 0, 2]}


class TestCanonicalForm:
    """Test cases for canonical keys and automorphisms."""

    def test_relabelings_share_a_key(self):
        """Isomorphic copies reduce to the same canonical tables."""
        base = build_minmax(3, 2)
        copy = transport(base, IsomorphismWitness((1, 2, 0), (1, 0)))

        key_base, _ = canonical_key(base)
        key_copy, _ = canonical_key(copy)

        assert key_base == key_copy

    def test_canonical_form_witness(self):
        """The returned witness produces the returned form."""
        base = transport(build_minmax(3, 2), IsomorphismWitness((2, 0, 1), (0, 1)))

        form, witness = canonical_form(base)

        assert transport(base, witness).same_tables(form)
        assert form.table_key() == canonical_key(base)[0]

    def test_automorphisms_of_z3(self):
        """Identity and negation fix the Z_3 addition table."""
        z3 = np.array([[0, 1, 2], [1, 2, 0], [2, 0, 1]])

        assert table_automorphisms(z3) == [(0, 1, 2), (0, 2, 1)]
