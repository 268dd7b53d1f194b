"""
Finite Gamma-semiring data model and axiom validation.

A Gamma-semiring is a pair of finite commutative semigroups (M, +) and
(Γ, +) with a ternary product M × Γ × M → M that distributes over both
additions and is associative in the sense (aαb)βc = aα(bβc). Elements are
identified by index; labels are cosmetic.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from gsr.core.kernels import AXIOM_ORDER, first_axiom_violations
from gsr.errors import MalformedTableError
from gsr.monitoring.metrics import get_metrics

logger = structlog.get_logger(__name__)


class Axiom(Enum):
    """Axiom families checked by validate()."""
    COMM_M = "COMM_M"
    ASSOC_M = "ASSOC_M"
    COMM_G = "COMM_G"
    ASSOC_G = "ASSOC_G"
    LDIST = "LDIST"
    RDIST = "RDIST"
    GDIST = "GDIST"
    PASSOC = "PASSOC"


# Carrier of each witness variable: "m" for M, "g" for Γ.
WITNESS_CARRIERS: Dict[Axiom, str] = {
    Axiom.COMM_M: "mm",
    Axiom.ASSOC_M: "mmm",
    Axiom.COMM_G: "gg",
    Axiom.ASSOC_G: "ggg",
    Axiom.LDIST: "mgmm",
    Axiom.RDIST: "mmgm",
    Axiom.GDIST: "mggm",
    Axiom.PASSOC: "mgmgm",
}

_IDENTITIES: Dict[Axiom, str] = {
    Axiom.COMM_M: "{0}+{1} = {1}+{0}",
    Axiom.ASSOC_M: "({0}+{1})+{2} = {0}+({1}+{2})",
    Axiom.COMM_G: "{0}+{1} = {1}+{0}",
    Axiom.ASSOC_G: "({0}+{1})+{2} = {0}+({1}+{2})",
    Axiom.LDIST: "{0}·{1}·({2}+{3}) = {0}·{1}·{2} + {0}·{1}·{3}",
    Axiom.RDIST: "({0}+{1})·{2}·{3} = {0}·{2}·{3} + {1}·{2}·{3}",
    Axiom.GDIST: "{0}·({1}+{2})·{3} = {0}·{1}·{3} + {0}·{2}·{3}",
    Axiom.PASSOC: "({0}·{1}·{2})·{3}·{4} = {0}·{1}·({2}·{3}·{4})",
}


def axiom_sides(
    axiom: Axiom,
    idx: Sequence[int],
    add_m: np.ndarray,
    add_g: np.ndarray,
    prod: np.ndarray,
) -> Tuple[int, int]:
    """Evaluate both sides of one axiom instance."""
    if axiom is Axiom.COMM_M:
        a, b = idx
        return int(add_m[a, b]), int(add_m[b, a])
    if axiom is Axiom.ASSOC_M:
        a, b, c = idx
        return int(add_m[add_m[a, b], c]), int(add_m[a, add_m[b, c]])
    if axiom is Axiom.COMM_G:
        x, y = idx
        return int(add_g[x, y]), int(add_g[y, x])
    if axiom is Axiom.ASSOC_G:
        x, y, z = idx
        return int(add_g[add_g[x, y], z]), int(add_g[x, add_g[y, z]])
    if axiom is Axiom.LDIST:
        a, al, b, c = idx
        return int(prod[a, al, add_m[b, c]]), int(add_m[prod[a, al, b], prod[a, al, c]])
    if axiom is Axiom.RDIST:
        a, b, al, c = idx
        return int(prod[add_m[a, b], al, c]), int(add_m[prod[a, al, c], prod[b, al, c]])
    if axiom is Axiom.GDIST:
        a, al, be, b = idx
        return int(prod[a, add_g[al, be], b]), int(add_m[prod[a, al, b], prod[a, be, b]])
    a, al, b, be, c = idx
    return int(prod[prod[a, al, b], be, c]), int(prod[a, al, prod[b, be, c]])


@dataclass(frozen=True)
class AxiomViolation:
    """One failed axiom family with its lexicographically first witness."""
    axiom: Axiom
    indices: Tuple[int, ...]
    witness: Tuple[str, ...]

    def replay(self, add_m: np.ndarray, add_g: np.ndarray, prod: np.ndarray) -> bool:
        """True when the witness still breaks the identity on these tables."""
        lhs, rhs = axiom_sides(self.axiom, self.indices, add_m, add_g, prod)
        return lhs != rhs

    def describe(self) -> str:
        return f"{self.axiom.value}: {_IDENTITIES[self.axiom].format(*self.witness)} fails"

    def to_dict(self) -> Dict[str, Any]:
        return {"axiom": self.axiom.value, "witness": list(self.witness)}


@dataclass(frozen=True, eq=False)
class GammaSemiring:
    """A validated, immutable finite Gamma-semiring.

    Instances are produced by validate() and the builders; the tables are
    read-only int64 arrays with prod indexed [a][alpha][b].
    """
    name: str
    m_elems: Tuple[str, ...]
    g_elems: Tuple[str, ...]
    add_m: np.ndarray
    add_g: np.ndarray
    prod: np.ndarray

    @property
    def n(self) -> int:
        return len(self.m_elems)

    @property
    def g(self) -> int:
        return len(self.g_elems)

    def add(self, a: int, b: int) -> int:
        return int(self.add_m[a, b])

    def gadd(self, alpha: int, beta: int) -> int:
        return int(self.add_g[alpha, beta])

    def mul(self, a: int, alpha: int, b: int) -> int:
        return int(self.prod[a, alpha, b])

    def m_index(self, label: str) -> int:
        try:
            return self.m_elems.index(label)
        except ValueError:
            raise MalformedTableError(f"Unknown element label {label!r} in {self.name}") from None

    def g_index(self, label: str) -> int:
        try:
            return self.g_elems.index(label)
        except ValueError:
            raise MalformedTableError(f"Unknown Gamma label {label!r} in {self.name}") from None

    def table_key(self) -> Tuple[int, ...]:
        """Concatenation (add_m, add_g, prod) in row-major order."""
        return tuple(
            int(x)
            for x in np.concatenate([self.add_m.ravel(), self.add_g.ravel(), self.prod.ravel()])
        )

    def same_tables(self, other: "GammaSemiring") -> bool:
        return (
            np.array_equal(self.add_m, other.add_m)
            and np.array_equal(self.add_g, other.add_g)
            and np.array_equal(self.prod, other.prod)
        )

    def renamed(self, name: str) -> "GammaSemiring":
        return GammaSemiring(name, self.m_elems, self.g_elems, self.add_m, self.add_g, self.prod)

    def __repr__(self) -> str:
        return f"GammaSemiring({self.name!r}, n={self.n}, g={self.g})"


RawTable = Union[np.ndarray, Sequence[Any]]


def _fill(raw: Any, dims: Tuple[int, ...], prefix: Tuple[int, ...], out: np.ndarray, table: str) -> None:
    depth = len(prefix)
    if depth == len(dims):
        if isinstance(raw, bool) or not isinstance(raw, (int, np.integer)):
            raise MalformedTableError(
                f"{table}{list(prefix)} = {raw!r} is not an integer index", witness=prefix
            )
        out[prefix] = int(raw)
        return
    if not isinstance(raw, (list, tuple)):
        raise MalformedTableError(f"{table}{list(prefix)} is not an array", witness=prefix)
    if len(raw) != dims[depth]:
        raise MalformedTableError(
            f"{table}{list(prefix)} has length {len(raw)}, expected {dims[depth]}",
            witness=prefix,
        )
    for i, item in enumerate(raw):
        _fill(item, dims, prefix + (i,), out, table)


def coerce_table(raw: RawTable, dims: Tuple[int, ...], bound: int, table: str) -> np.ndarray:
    """Convert a nested list or array to an int64 table, checking shape and range."""
    if isinstance(raw, np.ndarray):
        if raw.shape != dims:
            raise MalformedTableError(f"{table} has shape {raw.shape}, expected {dims}")
        if not np.issubdtype(raw.dtype, np.integer):
            raise MalformedTableError(f"{table} has non-integer dtype {raw.dtype}")
        arr = np.array(raw, dtype=np.int64)
    else:
        arr = np.empty(dims, dtype=np.int64)
        _fill(raw, dims, (), arr, table)
    bad = np.argwhere((arr < 0) | (arr >= bound))
    if len(bad):
        coord = tuple(int(x) for x in bad[0])
        raise MalformedTableError(
            f"{table}{list(coord)} = {int(arr[coord])} is out of range 0..{bound - 1}",
            witness=coord,
        )
    return arr


def _labels(labels: Optional[Sequence[str]], size: int, carrier: str) -> Tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(size))
    out = tuple(str(x) for x in labels)
    if len(out) != size:
        raise MalformedTableError(f"{carrier} has {len(out)} labels for {size} elements")
    if len(set(out)) != len(out):
        raise MalformedTableError(f"{carrier} labels are not distinct")
    return out


def _dims(add_m: RawTable, add_g: RawTable) -> Tuple[int, int]:
    for raw, table in ((add_m, "add_M"), (add_g, "add_Gamma")):
        if not isinstance(raw, (list, tuple, np.ndarray)):
            raise MalformedTableError(f"{table} is not an array")
    n = len(add_m)
    g = len(add_g)
    if n < 1 or g < 1:
        raise MalformedTableError("Both carriers need at least one element")
    return n, g


def check_axioms(add_m: np.ndarray, add_g: np.ndarray, prod: np.ndarray) -> List[Tuple[Axiom, Tuple[int, ...]]]:
    """All violated axiom families with their first witness, in AXIOM_ORDER."""
    rows = first_axiom_violations(
        np.ascontiguousarray(add_m, dtype=np.int64),
        np.ascontiguousarray(add_g, dtype=np.int64),
        np.ascontiguousarray(prod, dtype=np.int64),
    )
    found = []
    for k, axiom_id in enumerate(AXIOM_ORDER):
        if rows[k, 0] < 0:
            continue
        axiom = Axiom(axiom_id)
        arity = len(WITNESS_CARRIERS[axiom])
        found.append((axiom, tuple(int(x) for x in rows[k, :arity])))
    return found


def seal(
    name: str,
    m_elems: Tuple[str, ...],
    g_elems: Tuple[str, ...],
    add_m: np.ndarray,
    add_g: np.ndarray,
    prod: np.ndarray,
) -> GammaSemiring:
    """Wrap tables already known to satisfy the axioms, freezing the arrays."""
    tables = []
    for arr in (add_m, add_g, prod):
        frozen = np.array(arr, dtype=np.int64)
        frozen.setflags(write=False)
        tables.append(frozen)
    return GammaSemiring(name, m_elems, g_elems, tables[0], tables[1], tables[2])


def validate(
    add_m: RawTable,
    add_g: RawTable,
    prod: RawTable,
    *,
    name: str = "",
    m_elems: Optional[Sequence[str]] = None,
    g_elems: Optional[Sequence[str]] = None,
) -> Union[GammaSemiring, List[AxiomViolation]]:
    """Check raw tables and seal them into an instance.

    Returns the sealed GammaSemiring when all eight axiom families hold,
    otherwise one AxiomViolation per failed family.

    Raises:
        MalformedTableError: shape, label or index-range problems
    """
    n, g = _dims(add_m, add_g)
    m_labels = _labels(m_elems, n, "M")
    g_labels = _labels(g_elems, g, "Gamma")
    am = coerce_table(add_m, (n, n), n, "add_M")
    ag = coerce_table(add_g, (g, g), g, "add_Gamma")
    pr = coerce_table(prod, (n, g, n), n, "prod")

    violations = []
    for axiom, idx in check_axioms(am, ag, pr):
        labels = tuple(
            m_labels[i] if carrier == "m" else g_labels[i]
            for i, carrier in zip(idx, WITNESS_CARRIERS[axiom])
        )
        violations.append(AxiomViolation(axiom, idx, labels))

    get_metrics().record_axiom_check(not violations)
    if violations:
        logger.debug(
            "axioms_violated",
            instance=name,
            axioms=[v.axiom.value for v in violations],
        )
        return violations
    return seal(name, m_labels, g_labels, am, ag, pr)
