"""
Ideal kinds and their membership predicates.

- SUB_GSR: S + S ⊆ S and SΓS ⊆ S
- GAMMA_IDEAL: S + S ⊆ S and xγa, aγx ∈ S for all x ∈ M, γ ∈ Γ, a ∈ S
- QUASI: SUB_GSR and SΓM ∩ MΓS ⊆ S
- BI: SUB_GSR and SΓMΓS ⊆ S
- GEN_BI: SΓMΓS ⊆ S

Set products are the sum-closed Λ-products; the Γ-ideal clause is checked
element by element. A failed check carries a witness naming the least
offending element and one derivation of it as a sum of elementary words.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import structlog

from gsr.core.semiring import GammaSemiring
from gsr.errors import EmptyOperandError
from gsr.setalg.bits import iter_bits
from gsr.setalg.element_set import ElementSet, check_same_owner
from gsr.setalg.tables import ProductTables, tables_for

logger = structlog.get_logger(__name__)

# An elementary word a₁γ₁a₂…a_k as alternating M and Γ indices.
Word = Tuple[int, ...]


class IdealKind(Enum):
    """Ideal classes, valued by their command-line names."""
    SUB_GSR = "sub-gsr"
    GAMMA_IDEAL = "gamma-ideal"
    QUASI = "quasi"
    BI = "bi"
    GEN_BI = "gen-bi"

    @classmethod
    def parse(cls, text: str) -> "IdealKind":
        key = text.strip()
        for kind in cls:
            if key in (kind.value, kind.name):
                return kind
        raise ValueError(f"Unknown ideal kind {text!r}; expected one of {[k.value for k in cls]}")

    @property
    def needs_sum_closure(self) -> bool:
        return self is not IdealKind.GEN_BI


# Carrier pattern of the words in each clause: S member, M element, G for Γ.
CLAUSE_PATTERNS: Dict[str, str] = {
    "sum": "S",
    "product": "SGS",
    "left": "MGS",
    "right": "SGM",
    "sandwich": "SGMGS",
}


def evaluate_word(instance: GammaSemiring, word: Word) -> int:
    """Value of a₁γ₁a₂…a_k, evaluated left to right."""
    value = word[0]
    for i in range(1, len(word), 2):
        value = instance.mul(value, word[i], word[i + 1])
    return value


def evaluate_sum(instance: GammaSemiring, words: Tuple[Word, ...]) -> int:
    total = evaluate_word(instance, words[0])
    for word in words[1:]:
        total = instance.add(total, evaluate_word(instance, word))
    return total


@dataclass(frozen=True)
class Derivation:
    """`words` sum to the offending element; each word follows `pattern`."""
    pattern: str
    words: Tuple[Word, ...]

    def matches(self, instance: GammaSemiring, mask: int) -> bool:
        for word in self.words:
            if len(word) != len(self.pattern):
                return False
            for idx, slot in zip(word, self.pattern):
                if slot == "S" and not (mask >> idx) & 1:
                    return False
                if slot == "M" and not 0 <= idx < instance.n:
                    return False
                if slot == "G" and not 0 <= idx < instance.g:
                    return False
        return True

    def render(self, instance: GammaSemiring) -> str:
        def one(word: Word) -> str:
            return "·".join(
                instance.m_elems[x] if i % 2 == 0 else instance.g_elems[x] for i, x in enumerate(word)
            )

        return " + ".join(one(w) for w in self.words)

    def to_dict(self, instance: GammaSemiring) -> Dict[str, Any]:
        labelled = [
            [instance.m_elems[x] if i % 2 == 0 else instance.g_elems[x] for i, x in enumerate(w)]
            for w in self.words
        ]
        return {"pattern": self.pattern, "words": labelled}


@dataclass(frozen=True)
class KindWitness:
    """Offending element plus the derivations that put it in a required set."""
    kind: IdealKind
    clause: str
    element: int
    derivations: Tuple[Derivation, ...]

    def replay(self, instance: GammaSemiring, s: ElementSet) -> bool:
        """True when every derivation still yields the element and it lies outside S."""
        if (s.mask >> self.element) & 1:
            return False
        return all(
            d.matches(instance, s.mask) and evaluate_sum(instance, d.words) == self.element
            for d in self.derivations
        )

    def describe(self, instance: GammaSemiring) -> str:
        label = instance.m_elems[self.element]
        shown = " and ".join(f"{d.render(instance)} = {label}" for d in self.derivations)
        return f"{self.kind.value} fails ({self.clause}): {shown} is not in S"

    def to_dict(self, instance: GammaSemiring) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "clause": self.clause,
            "element": instance.m_elems[self.element],
            "derivations": [d.to_dict(instance) for d in self.derivations],
        }


@dataclass(frozen=True)
class KindCheck:
    holds: bool
    witness: Optional[KindWitness] = None

    def __bool__(self) -> bool:
        return self.holds


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def kind_holds(tables: ProductTables, mask: int, kind: IdealKind) -> bool:
    """Mask-only predicate; no witness, used by the subset scans."""
    if mask == 0:
        return False
    outside = ~mask
    if kind.needs_sum_closure and tables.sums(mask, mask) & outside:
        return False
    if kind is IdealKind.SUB_GSR:
        return not tables.pair_words(mask, mask) & outside
    if kind is IdealKind.GAMMA_IDEAL:
        return not (tables.left_words(mask) | tables.right_words(mask)) & outside
    if kind is IdealKind.QUASI:
        if tables.pair_words(mask, mask) & outside:
            return False
        meet = tables.closure(tables.right_words(mask)) & tables.closure(tables.left_words(mask))
        return not meet & outside
    if kind is IdealKind.BI:
        if tables.pair_words(mask, mask) & outside:
            return False
        return not tables.sandwich_words(mask, mask) & outside
    return not tables.closure(tables.sandwich_words(mask, mask)) & outside


def _words_for(instance: GammaSemiring, mask: int, pattern: str) -> Dict[int, Word]:
    """Lexicographically first word of `pattern` for every value it attains."""
    pools = [
        list(iter_bits(mask)) if slot == "S" else list(range(instance.n if slot == "M" else instance.g))
        for slot in pattern
    ]
    # The first word for a value extends the first word for its prefix value,
    # so one prefix per intermediate value is enough.
    found: Dict[int, Word] = {first: (first,) for first in pools[0]}
    for depth in range(1, len(pattern), 2):
        extended: Dict[int, Word] = {}
        for prefix in sorted(found.values()):
            value = evaluate_word(instance, prefix)
            for gamma in pools[depth]:
                for nxt in pools[depth + 1]:
                    extended.setdefault(instance.mul(value, gamma, nxt), prefix + (gamma, nxt))
        found = extended
    return found


def _sum_derivation(instance: GammaSemiring, generators: Dict[int, Word], target: int) -> Tuple[Word, ...]:
    """Shortest sum of generator words reaching `target`, found breadth first."""
    route: Dict[int, Tuple[int, ...]] = {value: (value,) for value in sorted(generators)}
    frontier = sorted(route)
    while target not in route and frontier:
        nxt = []
        for x in frontier:
            for y in sorted(generators):
                z = instance.add(x, y)
                if z not in route:
                    route[z] = route[x] + (y,)
                    nxt.append(z)
        frontier = sorted(nxt)
    return tuple(generators[v] for v in route[target])


def _sum_clause(instance: GammaSemiring, tables: ProductTables, mask: int, kind: IdealKind) -> Optional[KindWitness]:
    bad = tables.sums(mask, mask) & ~mask
    if not bad:
        return None
    element = _lowest(bad)
    for a in iter_bits(mask):
        for b in iter_bits(mask):
            if instance.add(a, b) == element:
                return KindWitness(kind, "sum", element, (Derivation("S", ((a,), (b,))),))
    raise AssertionError("offending sum without a derivation")


def _pointwise_clause(
    instance: GammaSemiring, mask: int, kind: IdealKind, clauses: Tuple[str, ...]
) -> Optional[KindWitness]:
    best: Optional[KindWitness] = None
    for clause in clauses:
        pattern = CLAUSE_PATTERNS[clause]
        for value, word in _words_for(instance, mask, pattern).items():
            if (mask >> value) & 1:
                continue
            if best is None or value < best.element:
                best = KindWitness(kind, clause, value, (Derivation(pattern, (word,)),))
    return best


def _closed_clause(
    instance: GammaSemiring, tables: ProductTables, mask: int, kind: IdealKind, clauses: Tuple[str, ...]
) -> Optional[KindWitness]:
    generators = [_words_for(instance, mask, CLAUSE_PATTERNS[c]) for c in clauses]
    reach = None
    for words in generators:
        closed = tables.closure(sum(1 << v for v in words))
        reach = closed if reach is None else reach & closed
    assert reach is not None
    bad = reach & ~mask
    if not bad:
        return None
    element = _lowest(bad)
    derivations = tuple(
        Derivation(CLAUSE_PATTERNS[c], _sum_derivation(instance, words, element))
        for c, words in zip(clauses, generators)
    )
    return KindWitness(kind, "+".join(clauses), element, derivations)


def find_kind_witness(instance: GammaSemiring, mask: int, kind: IdealKind) -> Optional[KindWitness]:
    """First failed clause of `kind` on mask, or None when the kind holds."""
    tables = tables_for(instance)
    if kind.needs_sum_closure:
        failure = _sum_clause(instance, tables, mask, kind)
        if failure is not None:
            return failure
    if kind is IdealKind.GAMMA_IDEAL:
        return _pointwise_clause(instance, mask, kind, ("left", "right"))
    if kind is IdealKind.GEN_BI:
        return _closed_clause(instance, tables, mask, kind, ("sandwich",))
    failure = _pointwise_clause(instance, mask, kind, ("product",))
    if failure is not None or kind is IdealKind.SUB_GSR:
        return failure
    if kind is IdealKind.QUASI:
        return _closed_clause(instance, tables, mask, kind, ("right", "left"))
    return _pointwise_clause(instance, mask, kind, ("sandwich",))


def has_kind(instance: GammaSemiring, s: ElementSet, kind: IdealKind) -> KindCheck:
    """Decide whether S is of `kind` in `instance`, with a witness on failure.

    Raises:
        EmptyOperandError: S is empty
    """
    check_same_owner(ElementSet.full(instance), s)
    if s.is_empty():
        raise EmptyOperandError(f"has_kind needs a nonempty set on {instance.name!r}")
    if kind_holds(tables_for(instance), s.mask, kind):
        return KindCheck(True)
    witness = find_kind_witness(instance, s.mask, kind)
    if witness is None:
        raise AssertionError(f"{kind.value} failed on {s.render()} without a witness")
    logger.debug(
        "kind_rejected",
        instance=instance.name,
        kind=kind.value,
        subset=s.render(),
        element=instance.m_elems[witness.element],
    )
    return KindCheck(False, witness)


def kinds_of(instance: GammaSemiring, s: ElementSet) -> List[IdealKind]:
    """Every kind S satisfies, in declaration order."""
    tables = tables_for(instance)
    return [kind for kind in IdealKind if kind_holds(tables, s.mask, kind)]
