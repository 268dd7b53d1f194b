"""
Ideal lattices, GB-simplicity and minimality.

is_gb_simple evaluates three criteria and insists they agree:

1. the only generalized bi-Gamma-ideal is M itself (subset enumeration)
2. aΓMΓa = M for every a
3. (a) = M for every a

Criterion 1 is skipped above the enumeration cap.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import structlog

from gsr.config.settings import get_settings
from gsr.core.restrict import lift, restrict_with_embedding
from gsr.core.semiring import GammaSemiring
from gsr.errors import CapExceededError, EquivalenceBrokenError, KindNotSatisfiedError
from gsr.ideals.constructions import generated_gen_bi, sandwich
from gsr.ideals.kinds import IdealKind, has_kind, kind_holds
from gsr.setalg.bits import count_bits, full_mask, iter_submasks
from gsr.setalg.element_set import ElementSet, check_same_owner
from gsr.setalg.tables import tables_for
from gsr.structure.scan import KIND_BITS, kind_flags, masks_of_kind

logger = structlog.get_logger(__name__)


def _cap(cap: Optional[int]) -> int:
    return cap if cap is not None else get_settings().structure.enumeration_cap


def enumerate_ideals(instance: GammaSemiring, kind: IdealKind, cap: Optional[int] = None) -> List[ElementSet]:
    """Every nonempty subset of `kind`, in increasing mask order.

    Raises:
        CapExceededError: n above the enumeration cap
    """
    masks = masks_of_kind(instance, kind, _cap(cap))
    logger.debug("ideals_enumerated", instance=instance.name, kind=kind.value, count=len(masks))
    return [ElementSet(instance, m) for m in masks]


@dataclass(frozen=True)
class GbSimplicity:
    """Verdict of the three GB-simplicity criteria.

    `by_enumeration` is None when criterion 1 was skipped. The witness
    fields name the first element whose sandwich (or generated set) falls
    short of M, and the first proper generalized bi-Gamma-ideal found.
    """
    instance: str
    simple: bool
    by_enumeration: Optional[bool]
    by_sandwich: bool
    by_generated: bool
    sandwich_witness: Optional[Tuple[int, int]] = None
    generated_witness: Optional[Tuple[int, int]] = None
    proper_ideal: Optional[int] = None

    def __bool__(self) -> bool:
        return self.simple

    def to_dict(self, owner: GammaSemiring) -> Dict[str, Any]:
        def pair(w: Optional[Tuple[int, int]]) -> Optional[Dict[str, str]]:
            if w is None:
                return None
            return {"a": owner.m_elems[w[0]], "set": ElementSet(owner, w[1]).render()}

        return {
            "instance": self.instance,
            "gb_simple": self.simple,
            "by_enumeration": self.by_enumeration,
            "by_sandwich": self.by_sandwich,
            "by_generated": self.by_generated,
            "sandwich_witness": pair(self.sandwich_witness),
            "generated_witness": pair(self.generated_witness),
            "proper_ideal": None if self.proper_ideal is None else ElementSet(owner, self.proper_ideal).render(),
        }


def _first_short(instance: GammaSemiring, generated: bool) -> Optional[Tuple[int, int]]:
    for a in range(instance.n):
        if generated:
            got = generated_gen_bi(instance, ElementSet.of(instance, (a,)))
        else:
            got = sandwich(instance, a)
        if not got.is_full():
            return a, got.mask
    return None


def is_gb_simple(instance: GammaSemiring, cap: Optional[int] = None) -> GbSimplicity:
    """Decide GB-simplicity by all available criteria.

    Raises:
        EquivalenceBrokenError: the criteria disagree
    """
    sandwich_witness = _first_short(instance, generated=False)
    generated_witness = _first_short(instance, generated=True)
    by_sandwich = sandwich_witness is None
    by_generated = generated_witness is None

    by_enumeration: Optional[bool] = None
    proper: Optional[int] = None
    if instance.n <= _cap(cap):
        full = full_mask(instance.n)
        proper = next((m for m in masks_of_kind(instance, IdealKind.GEN_BI, _cap(cap)) if m != full), None)
        by_enumeration = proper is None

    verdicts = {by_sandwich, by_generated}
    if by_enumeration is not None:
        verdicts.add(by_enumeration)
    record = GbSimplicity(
        instance.name,
        by_sandwich,
        by_enumeration,
        by_sandwich,
        by_generated,
        sandwich_witness,
        generated_witness,
        proper,
    )
    if len(verdicts) != 1:
        logger.error("gb_simplicity_disagreement", instance=instance.name, record=record.to_dict(instance))
        raise EquivalenceBrokenError(
            f"GB-simplicity criteria disagree on {instance.name}: enumeration={by_enumeration}, "
            f"sandwich={by_sandwich}, generated={by_generated}",
            witness=record,
        )
    return record


def gb_simple_within(
    instance: GammaSemiring, t: ElementSet, cap: Optional[int] = None
) -> Tuple[GammaSemiring, GbSimplicity, Optional[ElementSet]]:
    """GB-simplicity of the restriction to a sub-Gamma-semiring T.

    Returns the restricted instance, its verdict, and the proper
    generalized bi-Gamma-ideal found inside T (if any) lifted back into
    `instance`.

    Raises:
        NotClosedError: T is not a sub-Gamma-semiring
        EquivalenceBrokenError: the criteria disagree on the restriction
    """
    restricted, embedding = restrict_with_embedding(instance, t)
    verdict = is_gb_simple(restricted, cap)
    proper = None
    if verdict.proper_ideal is not None:
        proper = lift(ElementSet(restricted, verdict.proper_ideal), instance, embedding)
    logger.debug("gb_simple_within", instance=instance.name, carrier=t.render(), simple=verdict.simple)
    return restricted, verdict, proper


def is_minimal(instance: GammaSemiring, s: ElementSet, kind: IdealKind, cap: Optional[int] = None) -> bool:
    """True iff no strictly smaller nonempty subset of S is of `kind`.

    Raises:
        KindNotSatisfiedError: S is not of `kind`
        CapExceededError: S too large to scan its subsets
    """
    check_same_owner(ElementSet.full(instance), s)
    check = has_kind(instance, s, kind)
    if not check.holds:
        raise KindNotSatisfiedError(
            f"{s.render()} is not {kind.value} in {instance.name}", witness=check.witness
        )
    limit = _cap(cap)
    if instance.n <= limit:
        flags = kind_flags(instance, limit)
        bit = KIND_BITS[kind]
        return not any(flags[sub] & bit for sub in iter_submasks(s.mask) if sub != s.mask)
    if len(s) > limit:
        raise CapExceededError(f"{s.render()} has {len(s)} elements, subset scans are capped at {limit}")
    tables = tables_for(instance)
    return not any(kind_holds(tables, sub, kind) for sub in iter_submasks(s.mask) if sub != s.mask)


@dataclass
class LatticeSummary:
    """Ideals of one kind ordered by inclusion."""
    instance: GammaSemiring
    kind: IdealKind
    ideals: List[int]
    minimal: List[int] = field(default_factory=list)
    maximal_proper: List[int] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def sets(self, masks: List[int]) -> List[ElementSet]:
        return [ElementSet(self.instance, m) for m in masks]

    def to_dict(self) -> Dict[str, Any]:
        def render(m: int) -> str:
            return ElementSet(self.instance, m).render()

        return {
            "instance": self.instance.name,
            "kind": self.kind.value,
            "count": len(self.ideals),
            "ideals": [render(m) for m in self.ideals],
            "minimal": [render(m) for m in self.minimal],
            "maximal_proper": [render(m) for m in self.maximal_proper],
            "hasse": [[render(lo), render(hi)] for lo, hi in self.edges],
        }


def _covers(ideals: List[int]) -> List[Tuple[int, int]]:
    """Hasse edges (lower, upper) of the inclusion order."""
    edges = []
    ranked = sorted(ideals, key=lambda m: (-count_bits(m), m))
    for upper in ideals:
        below: List[int] = []
        for lower in ranked:
            if lower == upper or lower & ~upper:
                continue
            # Larger candidates come first, so a cover is never inside a kept one.
            if not any(lower & ~kept == 0 for kept in below):
                below.append(lower)
        edges.extend((lower, upper) for lower in below)
    return sorted(edges)


def lattice_summary(
    instance: GammaSemiring, kind: IdealKind, cap: Optional[int] = None, hasse: bool = True
) -> LatticeSummary:
    """Enumerated ideals with their minimal and maximal proper members."""
    ideals = masks_of_kind(instance, kind, _cap(cap))
    full = full_mask(instance.n)
    minimal = [m for m in ideals if not any(o != m and o & ~m == 0 for o in ideals)]
    proper = [m for m in ideals if m != full]
    maximal = [m for m in proper if not any(o != m and m & ~o == 0 for o in proper)]
    summary = LatticeSummary(instance, kind, ideals, minimal, maximal)
    if hasse:
        summary.edges = _covers(ideals)
    logger.info(
        "lattice_summarised",
        instance=instance.name,
        kind=kind.value,
        ideals=len(ideals),
        minimal=len(minimal),
    )
    return summary
