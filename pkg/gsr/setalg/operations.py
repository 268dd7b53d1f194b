"""
Set operations over a fixed Gamma-semiring.

A + B is pointwise and is not closed under addition. AΛB is the set of all
finite sums (at least one term) of elementary products aλb, i.e. the
pointwise products followed by additive closure; no implicit zero appears.
"""

from typing import Optional, Sequence

import numpy as np

from gsr.errors import EmptyOperandError, LengthTooShortError, OwnerMismatchError
from gsr.setalg.bits import iter_bits
from gsr.setalg.element_set import Carrier, ElementSet, check_same_owner
from gsr.setalg.tables import ProductTables, tables_for


def _require_nonempty(*sets: ElementSet) -> None:
    for s in sets:
        if s.is_empty():
            raise EmptyOperandError(f"Empty operand on {s.owner.name!r}")


def _require_m(*sets: ElementSet) -> None:
    for s in sets:
        if s.carrier is not Carrier.M:
            raise OwnerMismatchError("Expected a subset of M, got a subset of Gamma")


def add_pointwise(a: ElementSet, b: ElementSet) -> ElementSet:
    """{a + b : a ∈ A, b ∈ B} without additive closure."""
    check_same_owner(a, b)
    _require_m(a, b)
    _require_nonempty(a, b)
    return a.with_mask(tables_for(a.owner).sums(a.mask, b.mask))


def additive_closure(s: ElementSet) -> ElementSet:
    """Smallest T ⊇ S with T + T ⊆ T."""
    _require_m(s)
    _require_nonempty(s)
    return s.with_mask(tables_for(s.owner).closure(s.mask))


def pointwise_products(
    tables: ProductTables,
    prod: np.ndarray,
    a_mask: int,
    lam_mask: Optional[int],
    b_mask: int,
) -> int:
    """Mask of elementary products aλb; `lam_mask` None means all of Γ."""
    if lam_mask is None:
        return tables.pair_words(a_mask, b_mask)
    out = 0
    lams = list(iter_bits(lam_mask))
    for a in iter_bits(a_mask):
        for b in iter_bits(b_mask):
            for lam in lams:
                out |= 1 << int(prod[a, lam, b])
    return out


def gamma_product(a: ElementSet, lam: Optional[ElementSet], b: ElementSet) -> ElementSet:
    """AΛB: all finite sums Σ aᵢλᵢbᵢ. `lam` None stands for Λ = Γ."""
    check_same_owner(a, b)
    _require_m(a, b)
    _require_nonempty(a, b)
    lam_mask: Optional[int] = None
    if lam is not None:
        check_same_owner(a, lam)
        if lam.carrier is not Carrier.GAMMA:
            raise OwnerMismatchError("Λ must be a subset of Gamma")
        _require_nonempty(lam)
        lam_mask = None if lam.is_full() else lam.mask
    tables = tables_for(a.owner)
    words = pointwise_products(tables, a.owner.prod, a.mask, lam_mask, b.mask)
    return a.with_mask(tables.closure(words))


def chain_words(tables: ProductTables, masks: Sequence[int]) -> int:
    """Pointwise values of elementary words a₁γ₁a₂γ₂…a_k.

    Product associativity lets each word be evaluated left to right as
    (prefix value)γ a_next, so only the set of prefix values is carried.
    """
    if len(masks) == 3 and masks[1] == (1 << tables.n) - 1:
        return tables.sandwich_words(masks[0], masks[2])
    values = masks[0]
    for nxt in masks[1:]:
        values = tables.pair_words(values, nxt)
    return values


def chain_product(sets: Sequence[ElementSet]) -> ElementSet:
    """Additive closure of all words a₁γ₁a₂…γ_{k-1}a_k with aᵢ ∈ sets[i].

    Raises:
        LengthTooShortError: fewer than two factors
    """
    if len(sets) < 2:
        raise LengthTooShortError(f"chain_product needs at least 2 sets, got {len(sets)}")
    check_same_owner(*sets)
    _require_m(*sets)
    _require_nonempty(*sets)
    tables = tables_for(sets[0].owner)
    words = chain_words(tables, [s.mask for s in sets])
    return sets[0].with_mask(tables.closure(words))


def sandwich_set(s: ElementSet) -> ElementSet:
    """SΓMΓS with additive closure."""
    return chain_product([s, ElementSet.full(s.owner), s])

