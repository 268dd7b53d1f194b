"""Named constructions of generalized bi-Gamma-ideals."""

from typing import Tuple

import structlog

from gsr.core.semiring import GammaSemiring
from gsr.errors import NotGenBiError, NotSubSemiringError
from gsr.ideals.kinds import IdealKind, has_kind
from gsr.setalg.element_set import ElementSet, check_same_owner
from gsr.setalg.operations import chain_product, gamma_product, sandwich_set

logger = structlog.get_logger(__name__)


def _point(instance: GammaSemiring, a: int) -> ElementSet:
    return ElementSet.of(instance, (a,))


def generated_gen_bi(instance: GammaSemiring, a: ElementSet) -> ElementSet:
    """(A) = A ∪ AΓMΓA, the smallest generalized bi-Gamma-ideal containing A."""
    check_same_owner(ElementSet.full(instance), a)
    return a | sandwich_set(a)


def principal_left(instance: GammaSemiring, a: int) -> ElementSet:
    """aΓM."""
    return gamma_product(_point(instance, a), None, ElementSet.full(instance))


def principal_right(instance: GammaSemiring, a: int) -> ElementSet:
    """MΓa."""
    return gamma_product(ElementSet.full(instance), None, _point(instance, a))


def sandwich(instance: GammaSemiring, a: int) -> ElementSet:
    """aΓMΓa."""
    return sandwich_set(_point(instance, a))


def sandwich_relative(instance: GammaSemiring, t: ElementSet, a: int) -> ElementSet:
    """(aΓTΓa) ∩ T; the result may be empty.

    Raises:
        NotSubSemiringError: T is not a sub-Gamma-semiring
    """
    check = has_kind(instance, t, IdealKind.SUB_GSR)
    if not check.holds:
        assert check.witness is not None
        raise NotSubSemiringError(
            f"{t.render()} is not a sub-Gamma-semiring: {check.witness.describe(instance)}",
            witness=check.witness,
        )
    point = _point(instance, a)
    return chain_product([point, t, point]) & t


def translate(instance: GammaSemiring, b: ElementSet, a: ElementSet) -> Tuple[ElementSet, ElementSet]:
    """(BΓA, AΓB) for a generalized bi-Gamma-ideal B and any nonempty A.

    Raises:
        NotGenBiError: B is not a generalized bi-Gamma-ideal
    """
    check = has_kind(instance, b, IdealKind.GEN_BI)
    if not check.holds:
        assert check.witness is not None
        raise NotGenBiError(
            f"{b.render()} is not a generalized bi-Gamma-ideal: {check.witness.describe(instance)}",
            witness=check.witness,
        )
    return gamma_product(b, None, a), gamma_product(a, None, b)
