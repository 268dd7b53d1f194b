"""
Gamma-semirings of small order up to isomorphism.

For each pair of canonical commutative semigroups (M, +) and (Γ, +) the
product cube is filled entry by entry in row-major (a, α, b) order. Each
placement checks the distributivity identities whose three cube entries are
now known and every associativity instance the new entry takes part in.
Complete cubes are reduced to their least form under Aut(M, +) × Aut(Γ, +);
since the addition tables are already least in their classes this is the
least table key over all relabelings.

The search forest is split on its first cube entries; joblib workers take
the subtrees and the merge orders classes by key.
"""

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from joblib import Parallel, delayed

from gsr.census.semigroups import enum_comm_semigroups, labelled_comm_semigroups
from gsr.config.settings import get_settings
from gsr.core.isomorphism import canonical_key, table_automorphisms
from gsr.core.semiring import GammaSemiring, check_axioms, seal
from gsr.errors import CapExceededError
from gsr.monitoring.metrics import get_metrics

logger = structlog.get_logger(__name__)

Key = Tuple[int, ...]


class CubeSearch:
    """Backtracking over product cubes for fixed addition tables."""

    def __init__(self, add_m: np.ndarray, add_g: np.ndarray):
        self.add_m = [[int(x) for x in row] for row in add_m]
        self.add_g = [[int(x) for x in row] for row in add_g]
        self.n = len(self.add_m)
        self.g = len(self.add_g)
        self.size = self.n * self.g * self.n
        self.cube = [-1] * self.size
        self.m_perms = table_automorphisms(np.asarray(add_m))
        self.g_perms = table_automorphisms(np.asarray(add_g))
        self._sum_checks = self._bucket_sum_checks()

    def pos(self, a: int, alpha: int, b: int) -> int:
        return (a * self.g + alpha) * self.n + b

    def _bucket_sum_checks(self) -> List[List[Tuple[int, int, int]]]:
        """Triples (p, q, r) meaning cube[r] = cube[p] + cube[q], bucketed by last position."""
        n, g, pos = self.n, self.g, self.pos
        triples = set()
        for a in range(n):
            for alpha in range(g):
                for b in range(n):
                    for c in range(n):
                        # a α (b + c) = aαb + aαc
                        triples.add((pos(a, alpha, b), pos(a, alpha, c), pos(a, alpha, self.add_m[b][c])))
                        # (a + b) α c = aαc + bαc
                        triples.add((pos(a, alpha, c), pos(b, alpha, c), pos(self.add_m[a][b], alpha, c)))
                for beta in range(g):
                    for b in range(n):
                        # a (α + β) b = aαb + aβb
                        triples.add((pos(a, alpha, b), pos(a, beta, b), pos(a, self.add_g[alpha][beta], b)))
        buckets: List[List[Tuple[int, int, int]]] = [[] for _ in range(self.size)]
        for triple in sorted(triples):
            buckets[max(triple)].append(triple)
        return buckets

    def _passoc_ok(self, p: int) -> bool:
        """Check (aαb)βc = aα(bβc) on every instance touching position p."""
        n, g, cube, pos = self.n, self.g, self.cube, self.pos
        a0, rest = divmod(p, g * n)
        al0, b0 = divmod(rest, n)

        def instance_ok(a: int, alpha: int, b: int, beta: int, c: int) -> bool:
            x = cube[pos(a, alpha, b)]
            y = cube[pos(b, beta, c)]
            if x < 0 or y < 0:
                return True
            left = cube[pos(x, beta, c)]
            right = cube[pos(a, alpha, y)]
            return left < 0 or right < 0 or left == right

        for beta in range(g):
            for c in range(n):
                # p as (a, α, b)
                if not instance_ok(a0, al0, b0, beta, c):
                    return False
        for a in range(n):
            for alpha in range(g):
                # p as (b, β, c)
                if not instance_ok(a, alpha, a0, al0, b0):
                    return False
        for u in range(n):
            for gamma in range(g):
                for v in range(n):
                    value = cube[pos(u, gamma, v)]
                    # p as (x, β, c) with x = uγv
                    if value == a0 and not instance_ok(u, gamma, v, al0, b0):
                        return False
                    # p as (a, α, y) with y = uγv
                    if value == b0 and not instance_ok(a0, al0, u, gamma, v):
                        return False
        return True

    def _consistent(self, p: int) -> bool:
        cube = self.cube
        for left, right, total in self._sum_checks[p]:
            if cube[total] != self.add_m[cube[left]][cube[right]]:
                return False
        return self._passoc_ok(p)

    def prefixes(self, depth: int) -> List[Tuple[int, ...]]:
        """Consistent assignments of the first `depth` cube entries."""
        depth = min(depth, self.size)
        out: List[Tuple[int, ...]] = []

        def walk(k: int) -> None:
            if k == depth:
                out.append(tuple(self.cube[:depth]))
                return
            for value in range(self.n):
                self.cube[k] = value
                if self._consistent(k):
                    walk(k + 1)
            self.cube[k] = -1

        walk(0)
        return out

    def complete(self, prefix: Sequence[int]) -> Iterator[List[int]]:
        """All full cubes extending `prefix`."""
        self.cube = list(prefix) + [-1] * (self.size - len(prefix))

        def walk(k: int) -> Iterator[List[int]]:
            if k == self.size:
                yield list(self.cube)
                return
            for value in range(self.n):
                self.cube[k] = value
                if self._consistent(k):
                    yield from walk(k + 1)
            self.cube[k] = -1

        yield from walk(len(prefix))

    def least_key(self, cube: List[int]) -> Tuple[Key, np.ndarray]:
        """Least prod key under the automorphisms of both additions."""
        prod = np.array(cube, dtype=np.int64).reshape(self.n, self.g, self.n)
        best: Optional[Key] = None
        best_prod = prod
        for phi in self.m_perms:
            p = np.asarray(phi, dtype=np.int64)
            inv_p = np.argsort(p)
            for psi in self.g_perms:
                inv_q = np.argsort(np.asarray(psi, dtype=np.int64))
                relabeled = p[prod[np.ix_(inv_p, inv_q, inv_p)]]
                key = tuple(int(x) for x in relabeled.ravel())
                if best is None or key < best:
                    best, best_prod = key, relabeled
        assert best is not None
        return best, best_prod


def _search_subtree(add_m: np.ndarray, add_g: np.ndarray, prefix: Tuple[int, ...]) -> Dict[Key, np.ndarray]:
    search = CubeSearch(add_m, add_g)
    found: Dict[Key, np.ndarray] = {}
    for cube in search.complete(prefix):
        key, prod = search.least_key(cube)
        found.setdefault(key, prod)
    return found


def _check_caps(n: int, g: int, max_n: Optional[int], max_g: Optional[int]) -> None:
    settings = get_settings().census
    limit_n = max_n if max_n is not None else settings.max_n
    limit_g = max_g if max_g is not None else settings.max_g
    if n < 1 or g < 1 or n > limit_n or g > limit_g:
        raise CapExceededError(f"Census order ({n},{g}) outside caps n <= {limit_n}, g <= {limit_g}")


def _seal_class(n: int, g: int, index: int, add_m: np.ndarray, add_g: np.ndarray, prod: np.ndarray) -> GammaSemiring:
    return seal(
        f"gsr{n}x{g}-{index:04d}",
        tuple(str(i) for i in range(n)),
        tuple(str(i) for i in range(g)),
        add_m,
        add_g,
        prod,
    )


def enum_gamma_semirings(
    n: int,
    g: int,
    workers: Optional[int] = None,
    max_n: Optional[int] = None,
    max_g: Optional[int] = None,
) -> List[GammaSemiring]:
    """One canonical Gamma-semiring per isomorphism class of order (n, g).

    Classes are sorted by their (add_m, add_g, prod) key and named
    gsr{n}x{g}-NNNN in that order.

    Raises:
        CapExceededError: (n, g) outside the census caps
    """
    _check_caps(n, g, max_n, max_g)
    settings = get_settings().census
    n_jobs = workers if workers is not None else settings.workers

    tasks = []
    for add_m in enum_comm_semigroups(n):
        for add_g in enum_comm_semigroups(g):
            search = CubeSearch(add_m, add_g)
            for prefix in search.prefixes(settings.split_depth):
                tasks.append((add_m, add_g, prefix))

    if n_jobs > 1 and len(tasks) > 1:
        parts = Parallel(n_jobs=n_jobs)(delayed(_search_subtree)(*task) for task in tasks)
    else:
        parts = [_search_subtree(*task) for task in tasks]

    merged: Dict[Key, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    for (add_m, add_g, _), found in zip(tasks, parts):
        head = tuple(int(x) for x in np.concatenate([add_m.ravel(), add_g.ravel()]))
        for key, prod in found.items():
            merged.setdefault(head + key, (add_m, add_g, prod))

    classes = [
        _seal_class(n, g, i, *merged[key]) for i, key in enumerate(sorted(merged))
    ]
    metrics = get_metrics()
    for _ in classes:
        metrics.record_census_class(n, g)
    logger.info("census_order_done", n=n, g=g, classes=len(classes), tasks=len(tasks))
    return classes


def naive_gamma_semirings(n: int, g: int) -> List[GammaSemiring]:
    """Full-cube filter: every labelled table triple, validated, reduced by canonical key.

    Independent of the backtracking search and only feasible for tiny orders.
    """
    keys: Dict[Key, GammaSemiring] = {}
    m_tables = labelled_comm_semigroups(n)
    g_tables = labelled_comm_semigroups(g)
    for add_m in m_tables:
        for add_g in g_tables:
            for cube in itertools.product(range(n), repeat=n * g * n):
                prod = np.array(cube, dtype=np.int64).reshape(n, g, n)
                if check_axioms(add_m, add_g, prod):
                    continue
                candidate = seal("", tuple(map(str, range(n))), tuple(map(str, range(g))), add_m, add_g, prod)
                key, _ = canonical_key(candidate)
                if key not in keys:
                    keys[key] = candidate
    ordered = sorted(keys)
    result = []
    for i, key in enumerate(ordered):
        flat = np.array(key, dtype=np.int64)
        add_m = flat[: n * n].reshape(n, n)
        add_g = flat[n * n: n * n + g * g].reshape(g, g)
        prod = flat[n * n + g * g:].reshape(n, g, n)
        result.append(_seal_class(n, g, i, add_m, add_g, prod))
    logger.info("naive_census_done", n=n, g=g, classes=len(result))
    return result
