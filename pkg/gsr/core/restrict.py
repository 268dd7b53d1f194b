"""
Restriction of a Gamma-semiring to a sub-Gamma-semiring.

The restricted instance keeps Γ and its addition unchanged; M is replaced by
the members of S in increasing index order.
"""

from typing import Optional, Tuple

import numpy as np
import structlog

from gsr.core.semiring import GammaSemiring, seal
from gsr.errors import EmptyOperandError, NotClosedError
from gsr.setalg.element_set import ElementSet, check_same_owner

logger = structlog.get_logger(__name__)

Embedding = Tuple[int, ...]


def closure_failure(instance: GammaSemiring, mask: int) -> Optional[Tuple[str, Tuple[int, ...], int]]:
    """First obstruction to S being a sub-Gamma-semiring, or None.

    Sums (a, b) are scanned before products (a, γ, b), each in
    lexicographic index order. Returns (operation, operands, result).
    """
    members = [i for i in range(instance.n) if (mask >> i) & 1]
    for a in members:
        for b in members:
            c = instance.add(a, b)
            if not (mask >> c) & 1:
                return "sum", (a, b), c
    for a in members:
        for gamma in range(instance.g):
            for b in members:
                c = instance.mul(a, gamma, b)
                if not (mask >> c) & 1:
                    return "product", (a, gamma, b), c
    return None


def restrict_with_embedding(instance: GammaSemiring, s: ElementSet) -> Tuple[GammaSemiring, Embedding]:
    """Restrict `instance` to S and return the inclusion map of S into M.

    Raises:
        EmptyOperandError: S is empty
        NotClosedError: S is not closed under addition or the product
    """
    check_same_owner(ElementSet.full(instance), s)
    if s.is_empty():
        raise EmptyOperandError(f"Cannot restrict {instance.name!r} to the empty set")
    failure = closure_failure(instance, s.mask)
    if failure is not None:
        operation, operands, result = failure
        if operation == "sum":
            a, b = operands
            text = f"{instance.m_elems[a]}+{instance.m_elems[b]} = {instance.m_elems[result]}"
        else:
            a, gamma, b = operands
            text = (
                f"prod({instance.m_elems[a]},{instance.g_elems[gamma]},{instance.m_elems[b]})"
                f" = {instance.m_elems[result]}"
            )
        raise NotClosedError(f"{s.render()} is not closed: {text} is outside", witness=failure)

    embedding = s.members()
    position = np.full(instance.n, -1, dtype=np.int64)
    position[list(embedding)] = np.arange(len(embedding))
    idx = np.array(embedding, dtype=np.int64)
    add_m = position[instance.add_m[np.ix_(idx, idx)]]
    prod = position[instance.prod[idx][:, :, idx]]
    restricted = seal(
        f"{instance.name}|{s.render()}",
        tuple(instance.m_elems[i] for i in embedding),
        instance.g_elems,
        add_m,
        instance.add_g,
        prod,
    )
    logger.debug("restricted", instance=instance.name, size=len(embedding))
    return restricted, embedding


def restrict(instance: GammaSemiring, s: ElementSet) -> GammaSemiring:
    """The Gamma-semiring on carrier S with Γ unchanged."""
    return restrict_with_embedding(instance, s)[0]


def lift(subset: ElementSet, owner: GammaSemiring, embedding: Embedding) -> ElementSet:
    """Image of a set of the restricted instance inside `owner`."""
    return ElementSet.of(owner, (embedding[i] for i in subset))

