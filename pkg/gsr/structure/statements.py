"""
Registered statements about ideals, checked extensionally on one instance.

Each statement enumerates bound-variable assignments in canonical order and
decides its body on one assignment at a time. A violated body is a
counterexample; re-running the body on the same assignment replays it.
Hypotheses are part of the body, so a replayed witness that no longer
meets them does not reproduce.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Tuple, Type

import structlog

from gsr.config.settings import get_settings
from gsr.core.semiring import GammaSemiring
from gsr.errors import UnknownStatementError
from gsr.ideals.kinds import IdealKind, find_kind_witness, kind_holds
from gsr.setalg.bits import count_bits, full_mask, iter_bits, iter_submasks, iter_supermasks
from gsr.setalg.element_set import ElementSet
from gsr.setalg.tables import ProductTables, tables_for
from gsr.structure.scan import masks_of_kind

logger = structlog.get_logger(__name__)

# Bound variables as (name, value). Lower-case names are element indices,
# upper-case names are masks over M.
Assignment = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class Budget:
    """Quantifier limits for one verification.

    Subset quantifiers enumerate every mask when n <= full_enumeration_max_n.
    Above that each quantifier walks masks in increasing order and the run
    stops after sample_count assignments.
    """
    full_enumeration_max_n: int = 12
    sample_count: int = 1_000_000
    max_witnesses: int = 100

    @classmethod
    def from_settings(cls) -> "Budget":
        structure = get_settings().structure
        return cls(structure.full_enumeration_max_n, structure.sample_count, structure.max_witnesses)

    @classmethod
    def full(cls, max_witnesses: Optional[int] = None) -> "Budget":
        """Always enumerate, whatever the order."""
        witnesses = max_witnesses if max_witnesses is not None else get_settings().structure.max_witnesses
        return cls(full_enumeration_max_n=1 << 30, sample_count=1 << 62, max_witnesses=witnesses)

    @classmethod
    def parse(cls, text: Optional[str]) -> "Budget":
        """`full`, an assignment count, or None for the configured defaults."""
        if text is None:
            return cls.from_settings()
        if text.strip().lower() == "full":
            return cls.full()
        count = int(text)
        if count < 1:
            raise ValueError(f"Budget must be positive, got {count}")
        base = cls.from_settings()
        return cls(base.full_enumeration_max_n, count, base.max_witnesses)

    def enumerates(self, n: int) -> bool:
        return n <= self.full_enumeration_max_n

    def describe(self, n: int) -> Dict[str, Any]:
        if self.enumerates(n):
            return {"mode": "full"}
        return {"mode": "sampled", "sample_count": self.sample_count}


class Run:
    """Quantifier helpers and memo for one statement run on one instance."""

    def __init__(self, instance: GammaSemiring, budget: Budget):
        self.instance = instance
        self.tables: ProductTables = tables_for(instance)
        self.budget = budget
        self.full = budget.enumerates(instance.n)
        self.truncated = False
        self._families: Dict[IdealKind, List[int]] = {}
        self._simple: Dict[int, bool] = {}

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def universe(self) -> int:
        return full_mask(self.instance.n)

    def elements(self) -> range:
        return range(self.instance.n)

    def is_kind(self, mask: int, kind: IdealKind) -> bool:
        return kind_holds(self.tables, mask, kind)

    def subsets(self, core: int = 0, universe: Optional[int] = None) -> Iterator[int]:
        """Nonempty masks with core ⊆ S ⊆ universe, in increasing order."""
        upper = self.universe if universe is None else universe
        yielded = 0
        for mask in iter_supermasks(core, upper):
            if mask == 0:
                continue
            if not self.full and yielded >= self.budget.sample_count:
                self.truncated = True
                return
            yielded += 1
            yield mask

    def family(self, kind: IdealKind) -> List[int]:
        """Masks of `kind` among the quantified subsets, in increasing order."""
        cached = self._families.get(kind)
        if cached is not None:
            return cached
        if self.full and self.n <= get_settings().structure.enumeration_cap:
            found = masks_of_kind(self.instance, kind)
        else:
            found = [m for m in self.subsets() if self.is_kind(m, kind)]
        self._families[kind] = found
        return found

    # Set products, all sum-closed.

    def left_product(self, mask: int) -> int:
        """MΓS."""
        return self.tables.closure(self.tables.left_words(mask))

    def right_product(self, mask: int) -> int:
        """SΓM."""
        return self.tables.closure(self.tables.right_words(mask))

    def product(self, a: int, b: int) -> int:
        return self.tables.closure(self.tables.pair_words(a, b))

    def chain(self, a: int, middle: int, c: int) -> int:
        """AΓBΓC."""
        return self.tables.closure(self.tables.pair_words(self.tables.pair_words(a, middle), c))

    def sandwich(self, mask: int) -> int:
        """SΓMΓS."""
        return self.tables.closure(self.tables.sandwich_words(mask, mask))

    def generated(self, mask: int) -> int:
        return mask | self.sandwich(mask)

    def gen_bi_within(self, inner: int, carrier: int) -> bool:
        """U is a generalized bi-Gamma-ideal of the restriction to `carrier`."""
        return self.chain(inner, carrier, inner) & ~inner == 0

    def gb_simple_within(self, carrier: int) -> bool:
        """The restriction to a sub-Gamma-semiring is GB-simple.

        Decided by its definition while the carrier fits the enumeration
        cap, by the sandwich criterion above it.
        """
        cached = self._simple.get(carrier)
        if cached is not None:
            return cached
        if count_bits(carrier) <= get_settings().structure.enumeration_cap:
            simple = not any(
                self.gen_bi_within(sub, carrier) for sub in iter_submasks(carrier) if sub != carrier
            )
        else:
            simple = all(self.chain(1 << t, carrier, 1 << t) == carrier for t in iter_bits(carrier))
        self._simple[carrier] = simple
        return simple

    def minimal_gen_bi(self, mask: int) -> bool:
        """No strictly smaller nonempty generalized bi-Gamma-ideal inside mask."""
        return not any(
            self.is_kind(sub, IdealKind.GEN_BI) for sub in iter_submasks(mask) if sub != mask
        )


class Statement(ABC):
    """One universally quantified claim."""

    statement_id: str = ""
    summary: str = ""

    @abstractmethod
    def assignments(self, run: Run) -> Iterator[Assignment]:
        """Bound-variable assignments in canonical order."""

    @abstractmethod
    def holds(self, run: Run, assignment: Assignment) -> bool:
        """Body of the statement (hypotheses included) on one assignment."""

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        """Computed values shown next to a counterexample."""
        return {}


def _get(assignment: Assignment, name: str) -> int:
    for key, value in assignment:
        if key == name:
            return value
    raise KeyError(name)


def _sets(run: Run, **masks: int) -> Dict[str, str]:
    return {name: ElementSet(run.instance, mask).render() for name, mask in masks.items()}


class KindImplication(Statement):
    """Every subset of kind `stronger` is of kind `weaker`."""

    stronger: IdealKind = IdealKind.QUASI
    weaker: IdealKind = IdealKind.BI

    def assignments(self, run: Run) -> Iterator[Assignment]:
        for s in run.subsets():
            yield (("S", s),)

    def holds(self, run: Run, assignment: Assignment) -> bool:
        s = _get(assignment, "S")
        return not run.is_kind(s, self.stronger) or run.is_kind(s, self.weaker)


class QuasiIsBi(KindImplication):
    statement_id = "R18a"
    summary = "every quasi-Gamma-ideal is a bi-Gamma-ideal"
    stronger = IdealKind.QUASI
    weaker = IdealKind.BI


class BiIsGenBi(KindImplication):
    statement_id = "R18b"
    summary = "every bi-Gamma-ideal is a generalized bi-Gamma-ideal"
    stronger = IdealKind.BI
    weaker = IdealKind.GEN_BI


class Constructions(Statement):
    statement_id = "CONSTR"
    summary = "aΓM, MΓa and aΓMΓa are generalized bi-Gamma-ideals"

    def _parts(self, run: Run, a: int) -> Dict[str, int]:
        point = 1 << a
        return {
            "aGM": run.right_product(point),
            "MGa": run.left_product(point),
            "aGMGa": run.sandwich(point),
        }

    def assignments(self, run: Run) -> Iterator[Assignment]:
        for a in run.elements():
            yield (("a", a),)

    def holds(self, run: Run, assignment: Assignment) -> bool:
        parts = self._parts(run, _get(assignment, "a"))
        return all(run.is_kind(m, IdealKind.GEN_BI) for m in parts.values())

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        return _sets(run, **self._parts(run, _get(assignment, "a")))


class Intersection(Statement):
    statement_id = "INTERSECT"
    summary = "a nonempty intersection of generalized bi-Gamma-ideals is one"

    def assignments(self, run: Run) -> Iterator[Assignment]:
        family = run.family(IdealKind.GEN_BI)
        for i, first in enumerate(family):
            for second in family[i + 1:]:
                if first & second:
                    yield (("B1", first), ("B2", second))

    def holds(self, run: Run, assignment: Assignment) -> bool:
        first, second = _get(assignment, "B1"), _get(assignment, "B2")
        if not (first & second) or not run.is_kind(first, IdealKind.GEN_BI) or not run.is_kind(second, IdealKind.GEN_BI):
            return True
        return run.is_kind(first & second, IdealKind.GEN_BI)

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        return _sets(run, meet=_get(assignment, "B1") & _get(assignment, "B2"))


class Smallest(Statement):
    statement_id = "SMALLEST"
    summary = "A ∪ AΓMΓA is the smallest generalized bi-Gamma-ideal containing A"

    def assignments(self, run: Run) -> Iterator[Assignment]:
        family = run.family(IdealKind.GEN_BI)
        for a in run.subsets():
            yield (("A", a),)
            for c in family:
                if a & ~c == 0:
                    yield (("A", a), ("C", c))

    def holds(self, run: Run, assignment: Assignment) -> bool:
        a = _get(assignment, "A")
        generated = run.generated(a)
        if len(assignment) == 1:
            return run.is_kind(generated, IdealKind.GEN_BI) and a & ~generated == 0
        c = _get(assignment, "C")
        if not run.is_kind(c, IdealKind.GEN_BI) or a & ~c:
            return True
        return generated & ~c == 0

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        return _sets(run, generated=run.generated(_get(assignment, "A")))


class SandwichRelative(Statement):
    statement_id = "SANDWICH_REL"
    summary = "(aΓTΓa) ∩ T, when nonempty, is a generalized bi-Gamma-ideal of T"

    def _meet(self, run: Run, t: int, a: int) -> int:
        return run.chain(1 << a, t, 1 << a) & t

    def assignments(self, run: Run) -> Iterator[Assignment]:
        for t in run.family(IdealKind.SUB_GSR):
            for a in run.elements():
                yield (("T", t), ("a", a))

    def holds(self, run: Run, assignment: Assignment) -> bool:
        t, a = _get(assignment, "T"), _get(assignment, "a")
        if not run.is_kind(t, IdealKind.SUB_GSR):
            return True
        meet = self._meet(run, t, a)
        return meet == 0 or run.gen_bi_within(meet, t)

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        return _sets(run, meet=self._meet(run, _get(assignment, "T"), _get(assignment, "a")))


class ContainingSubsets(Statement):
    """Every subset of T containing core(T) is of kind `conclusion`.

    T ranges over sets of kind `hypothesis`; `side` filters the subsets
    further when the statement carries an extra condition on them.
    """

    hypothesis: IdealKind = IdealKind.SUB_GSR
    conclusion: IdealKind = IdealKind.SUB_GSR
    variable: str = "A"

    @abstractmethod
    def core(self, run: Run, t: int) -> int:
        """Mandatory part every quantified subset must contain."""

    def side(self, run: Run, subset: int) -> bool:
        return True

    def assignments(self, run: Run) -> Iterator[Assignment]:
        for t in run.family(self.hypothesis):
            core = self.core(run, t)
            if core & ~t:
                continue
            for subset in run.subsets(core, t):
                if self.side(run, subset):
                    yield (("T", t), (self.variable, subset))

    def holds(self, run: Run, assignment: Assignment) -> bool:
        t, subset = _get(assignment, "T"), _get(assignment, self.variable)
        if not run.is_kind(t, self.hypothesis):
            return True
        if subset & ~t or self.core(run, t) & ~subset or not self.side(run, subset):
            return True
        return run.is_kind(subset, self.conclusion)

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        subset = _get(assignment, self.variable)
        detail: Dict[str, Any] = _sets(run, core=self.core(run, _get(assignment, "T")))
        witness = find_kind_witness(run.instance, subset, self.conclusion)
        if witness is not None:
            detail["violation"] = witness.describe(run.instance)
        return detail


class SubsetsAboveLeftProduct(ContainingSubsets):
    statement_id = "P52"
    summary = "every subset of a sub-Gamma-semiring T containing MΓT is a sub-Gamma-semiring"
    hypothesis = IdealKind.SUB_GSR
    conclusion = IdealKind.SUB_GSR
    variable = "A"

    def core(self, run: Run, t: int) -> int:
        return run.left_product(t)


class SubsetsAboveBothProducts(ContainingSubsets):
    statement_id = "P6"
    summary = "every subset of a Gamma-ideal T containing MΓT ∪ TΓM is a Gamma-ideal"
    hypothesis = IdealKind.GAMMA_IDEAL
    conclusion = IdealKind.GAMMA_IDEAL
    variable = "B"

    def core(self, run: Run, t: int) -> int:
        return run.left_product(t) | run.right_product(t)


class SubsetsAboveProductMeet(ContainingSubsets):
    statement_id = "P7"
    summary = "every subset of a quasi-Gamma-ideal T containing TΓM ∩ MΓT is a quasi-Gamma-ideal"
    hypothesis = IdealKind.QUASI
    conclusion = IdealKind.QUASI
    variable = "C"

    def core(self, run: Run, t: int) -> int:
        return run.right_product(t) & run.left_product(t)


class ClosedSubsetsAboveSandwich(ContainingSubsets):
    statement_id = "P71"
    summary = "every subset D of a bi-Gamma-ideal T with TΓMΓT ⊆ D and DΓD ⊆ D is a bi-Gamma-ideal"
    hypothesis = IdealKind.BI
    conclusion = IdealKind.BI
    variable = "D"

    def core(self, run: Run, t: int) -> int:
        return run.sandwich(t)

    def side(self, run: Run, subset: int) -> bool:
        return run.product(subset, subset) & ~subset == 0


class SubsetsAboveSandwich(ContainingSubsets):
    statement_id = "P8"
    summary = "every subset of a generalized bi-Gamma-ideal T containing TΓMΓT is one"
    hypothesis = IdealKind.GEN_BI
    conclusion = IdealKind.GEN_BI
    variable = "E"

    def core(self, run: Run, t: int) -> int:
        return run.sandwich(t)


class SimplicityCriteria(Statement):
    statement_id = "SIMPLE_EQ"
    summary = "GB-simple ⟺ aΓMΓa = M for all a ⟺ (a) = M for all a"

    def _criteria(self, run: Run) -> Dict[str, Any]:
        full = run.universe
        short_sandwich = next((a for a in run.elements() if run.sandwich(1 << a) != full), None)
        short_generated = next((a for a in run.elements() if run.generated(1 << a) != full), None)
        proper = next((m for m in run.family(IdealKind.GEN_BI) if m != full), None)
        by_enumeration: Optional[bool]
        if proper is not None:
            by_enumeration = False
        elif run.full:
            by_enumeration = True
        else:
            by_enumeration = None
        return {
            "by_enumeration": by_enumeration,
            "by_sandwich": short_sandwich is None,
            "by_generated": short_generated is None,
            "short_sandwich": short_sandwich,
            "short_generated": short_generated,
            "proper": proper,
        }

    def assignments(self, run: Run) -> Iterator[Assignment]:
        yield ()

    def holds(self, run: Run, assignment: Assignment) -> bool:
        c = self._criteria(run)
        verdicts = {c["by_sandwich"], c["by_generated"]}
        if c["by_enumeration"] is not None:
            verdicts.add(c["by_enumeration"])
        return len(verdicts) == 1

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        c = self._criteria(run)
        labels = run.instance.m_elems
        return {
            "by_enumeration": c["by_enumeration"],
            "by_sandwich": c["by_sandwich"],
            "by_generated": c["by_generated"],
            "short_sandwich": None if c["short_sandwich"] is None else labels[c["short_sandwich"]],
            "short_generated": None if c["short_generated"] is None else labels[c["short_generated"]],
            "proper": None if c["proper"] is None else ElementSet(run.instance, c["proper"]).render(),
        }


class SimpleSubsemiringInside(Statement):
    statement_id = "L38"
    summary = "a GB-simple sub-Gamma-semiring T meeting a generalized bi-Gamma-ideal B lies in B"

    def assignments(self, run: Run) -> Iterator[Assignment]:
        gen_bi = run.family(IdealKind.GEN_BI)
        for t in run.family(IdealKind.SUB_GSR):
            if not run.gb_simple_within(t):
                continue
            for b in gen_bi:
                if t & b:
                    yield (("T", t), ("B", b))

    def holds(self, run: Run, assignment: Assignment) -> bool:
        t, b = _get(assignment, "T"), _get(assignment, "B")
        if not (t & b) or not run.is_kind(t, IdealKind.SUB_GSR) or not run.is_kind(b, IdealKind.GEN_BI):
            return True
        if not run.gb_simple_within(t):
            return True
        return t & ~b == 0


class Translates(Statement):
    statement_id = "TRANSLATE"
    summary = "BΓA and AΓB are generalized bi-Gamma-ideals for B one and any nonempty A"

    def assignments(self, run: Run) -> Iterator[Assignment]:
        family = run.family(IdealKind.GEN_BI)
        for b in family:
            for a in run.subsets():
                yield (("B", b), ("A", a))

    def holds(self, run: Run, assignment: Assignment) -> bool:
        b, a = _get(assignment, "B"), _get(assignment, "A")
        if not run.is_kind(b, IdealKind.GEN_BI) or a == 0:
            return True
        return run.is_kind(run.product(b, a), IdealKind.GEN_BI) and run.is_kind(
            run.product(a, b), IdealKind.GEN_BI
        )

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        b, a = _get(assignment, "B"), _get(assignment, "A")
        return _sets(run, BGA=run.product(b, a), AGB=run.product(a, b))


class MinimalIffSimple(Statement):
    statement_id = "MIN_EQ_SIMPLE"
    summary = "a bi-Gamma-ideal is a minimal generalized bi-Gamma-ideal iff it is GB-simple"

    def assignments(self, run: Run) -> Iterator[Assignment]:
        cap = get_settings().structure.enumeration_cap
        for b in run.family(IdealKind.BI):
            if count_bits(b) <= cap:
                yield (("B", b),)

    def holds(self, run: Run, assignment: Assignment) -> bool:
        b = _get(assignment, "B")
        if not run.is_kind(b, IdealKind.BI):
            return True
        return run.minimal_gen_bi(b) == run.gb_simple_within(b)

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        b = _get(assignment, "B")
        return {"minimal": run.minimal_gen_bi(b), "gb_simple": run.gb_simple_within(b)}


class ProperMinimalIffDisjoint(Statement):
    statement_id = "T311"
    summary = "all proper generalized bi-Gamma-ideals are minimal iff distinct ones are disjoint"

    def _directions(self, run: Run) -> Optional[Dict[str, Any]]:
        full = run.universe
        proper = [m for m in run.family(IdealKind.GEN_BI) if m != full]
        if not proper:
            return None
        non_minimal = next(
            ((m, o) for m in proper for o in proper if o != m and o & ~m == 0),
            None,
        )
        meeting = next(
            ((p, q) for i, p in enumerate(proper) for q in proper[i + 1:] if p & q),
            None,
        )
        return {"non_minimal": non_minimal, "meeting": meeting}

    def assignments(self, run: Run) -> Iterator[Assignment]:
        yield ()

    def holds(self, run: Run, assignment: Assignment) -> bool:
        found = self._directions(run)
        if found is None:
            return True
        return (found["non_minimal"] is None) == (found["meeting"] is None)

    def explain(self, run: Run, assignment: Assignment) -> Dict[str, Any]:
        found = self._directions(run)
        if found is None:
            return {"proper": 0}

        def render(pair: Optional[Tuple[int, int]]) -> Optional[List[str]]:
            if pair is None:
                return None
            return [ElementSet(run.instance, m).render() for m in pair]

        all_minimal = found["non_minimal"] is None
        disjoint = found["meeting"] is None
        return {
            "all_minimal": all_minimal,
            "pairwise_disjoint": disjoint,
            "minimal_implies_disjoint": not all_minimal or disjoint,
            "disjoint_implies_minimal": not disjoint or all_minimal,
            "non_minimal": render(found["non_minimal"]),
            "meeting_pair": render(found["meeting"]),
        }


class StatementRegistry:
    """Registry of statements by id, in reporting order."""

    _statements: Dict[str, Type[Statement]] = {}

    @classmethod
    def register(cls, statement_class: Type[Statement]) -> Type[Statement]:
        cls._statements[statement_class.statement_id] = statement_class
        return statement_class

    @classmethod
    def get(cls, statement_id: str) -> Statement:
        """
        Instantiate a registered statement.

        Raises:
            UnknownStatementError: the id is not registered
        """
        if statement_id not in cls._statements:
            available = ", ".join(cls._statements)
            raise UnknownStatementError(f"Unknown statement {statement_id!r}. Available: {available}")
        return cls._statements[statement_id]()

    @classmethod
    def available(cls) -> List[str]:
        return list(cls._statements)

    @classmethod
    def resolve(cls, requested: List[str]) -> List[str]:
        """Expand ALL and check every id, keeping registry order for ALL."""
        if any(r.upper() == "ALL" for r in requested):
            return cls.available()
        for statement_id in requested:
            cls.get(statement_id)
        return list(dict.fromkeys(requested))


for _statement in (
    QuasiIsBi,
    BiIsGenBi,
    Constructions,
    Intersection,
    Smallest,
    SandwichRelative,
    SubsetsAboveLeftProduct,
    SubsetsAboveBothProducts,
    SubsetsAboveProductMeet,
    ClosedSubsetsAboveSandwich,
    SubsetsAboveSandwich,
    SimplicityCriteria,
    SimpleSubsemiringInside,
    Translates,
    MinimalIffSimple,
    ProperMinimalIffDisjoint,
):
    StatementRegistry.register(_statement)
