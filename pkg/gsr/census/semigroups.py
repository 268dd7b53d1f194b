"""
Commutative semigroups of small order up to isomorphism.

Tables are filled one upper-triangle entry at a time; associativity is
checked on every triple whose entries are already known. Each complete
table is reduced to its lexicographically least relabeling.
"""

import itertools
from typing import List, Optional, Tuple

import numpy as np
import structlog

from gsr.config.settings import get_settings
from gsr.errors import CapExceededError

logger = structlog.get_logger(__name__)


def _associative_so_far(table: List[List[int]], n: int) -> bool:
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            if ab < 0:
                continue
            for c in range(n):
                bc = table[b][c]
                if bc < 0:
                    continue
                left = table[ab][c]
                right = table[a][bc]
                if left >= 0 and right >= 0 and left != right:
                    return False
    return True


def labelled_comm_semigroups(n: int) -> List[np.ndarray]:
    """Every commutative associative table on {0..n-1}, in lexicographic order."""
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    table = [[-1] * n for _ in range(n)]
    found: List[np.ndarray] = []

    def place(k: int) -> None:
        if k == len(cells):
            found.append(np.array(table, dtype=np.int64))
            return
        i, j = cells[k]
        for value in range(n):
            table[i][j] = table[j][i] = value
            if _associative_so_far(table, n):
                place(k + 1)
        table[i][j] = table[j][i] = -1

    place(0)
    return found


def table_key(table: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(x) for x in table.ravel())


def canonical_table(table: np.ndarray) -> np.ndarray:
    """Lexicographically least relabeling of a binary operation table."""
    n = table.shape[0]
    best: Optional[Tuple[int, ...]] = None
    best_table = table
    for perm in itertools.permutations(range(n)):
        p = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(p)
        relabeled = p[table[np.ix_(inv, inv)]]
        key = table_key(relabeled)
        if best is None or key < best:
            best, best_table = key, relabeled
    return best_table


def enum_comm_semigroups(n: int, cap: Optional[int] = None) -> List[np.ndarray]:
    """One canonical table per isomorphism class, sorted by table key.

    Raises:
        CapExceededError: n above the semigroup cap
    """
    limit = cap if cap is not None else get_settings().census.semigroup_cap
    if n < 1 or n > limit:
        raise CapExceededError(f"Semigroup census supports 1 <= n <= {limit}, got {n}")
    classes = {}
    for table in labelled_comm_semigroups(n):
        canonical = canonical_table(table)
        classes.setdefault(table_key(canonical), canonical)
    result = [classes[key] for key in sorted(classes)]
    for table in result:
        table.setflags(write=False)
    logger.info("semigroups_enumerated", order=n, classes=len(result))
    return result
