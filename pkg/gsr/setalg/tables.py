"""
Per-instance precomputed product tables.

Subset enumeration dominates runtime, so every set operation works on
masks looked up here instead of re-walking the product cube:

- add_bits[a][b]   = 1 << (a + b)
- pair[a][b]       = {aγb : γ ∈ Γ}
- right[a]         = {aγx : γ ∈ Γ, x ∈ M}   (pointwise aΓM)
- left[a]          = {xγa : γ ∈ Γ, x ∈ M}   (pointwise MΓa)
- sandwich[a][c]   = {aαmγc : α, γ ∈ Γ, m ∈ M}

Tables are built once per instance and shared read-only.
"""

import threading
import weakref
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional

import numpy as np
import structlog

from gsr.config.settings import get_settings
from gsr.core.semiring import GammaSemiring
from gsr.setalg.bits import iter_bits

logger = structlog.get_logger(__name__)


@dataclass
class ProductTables:
    """Mask tables for one instance plus an LRU memo of additive closures."""
    n: int
    add_bits: List[List[int]]
    pair: List[List[int]]
    right: List[int]
    left: List[int]
    sandwich: List[List[int]]
    memo_size: Optional[int] = None
    _closure_memo: Callable[[int], int] = field(init=False, repr=False)

    def __post_init__(self):
        size = self.memo_size if self.memo_size is not None else get_settings().structure.closure_memo_size
        self.memo_size = size
        self._closure_memo = lru_cache(maxsize=size)(self._close)

    def sums(self, a_mask: int, b_mask: int) -> int:
        """Pointwise {a + b : a ∈ A, b ∈ B}."""
        out = 0
        for a in iter_bits(a_mask):
            row = self.add_bits[a]
            for b in iter_bits(b_mask):
                out |= row[b]
        return out

    def closure(self, mask: int) -> int:
        """Smallest sum-closed superset of `mask` (0 for the empty mask)."""
        return self._closure_memo(mask)

    def closure_memo_info(self):
        """Hits, misses, maxsize and current size of the closure memo."""
        return self._closure_memo.cache_info()

    def _close(self, mask: int) -> int:
        closed = mask
        frontier = mask
        while frontier:
            # Sums of two old elements are already in `closed`.
            new = self.sums(frontier, closed) & ~closed
            closed |= new
            frontier = new
        return closed

    def sandwich_words(self, a_mask: int, c_mask: int) -> int:
        """Pointwise elementary words aαmγc with a ∈ A, c ∈ C."""
        out = 0
        for a in iter_bits(a_mask):
            row = self.sandwich[a]
            for c in iter_bits(c_mask):
                out |= row[c]
        return out

    def pair_words(self, a_mask: int, b_mask: int) -> int:
        """Pointwise aγb with a ∈ A, b ∈ B, γ ∈ Γ."""
        out = 0
        for a in iter_bits(a_mask):
            row = self.pair[a]
            for b in iter_bits(b_mask):
                out |= row[b]
        return out

    def right_words(self, mask: int) -> int:
        """Pointwise SΓM."""
        out = 0
        for a in iter_bits(mask):
            out |= self.right[a]
        return out

    def left_words(self, mask: int) -> int:
        """Pointwise MΓS."""
        out = 0
        for a in iter_bits(mask):
            out |= self.left[a]
        return out

    def arrays(self) -> Dict[str, np.ndarray]:
        """int64 copies for compiled kernels (only valid while n < 63)."""
        return {
            "add": np.array(
                [[row[b].bit_length() - 1 for b in range(self.n)] for row in self.add_bits],
                dtype=np.int64,
            ),
            "pair": np.array(self.pair, dtype=np.int64),
            "right": np.array(self.right, dtype=np.int64),
            "left": np.array(self.left, dtype=np.int64),
            "sandwich": np.array(self.sandwich, dtype=np.int64),
        }


def _build(instance: GammaSemiring) -> ProductTables:
    n, g = instance.n, instance.g
    prod = instance.prod
    add_bits = [[1 << int(instance.add_m[a, b]) for b in range(n)] for a in range(n)]
    pair = [[0] * n for _ in range(n)]
    right = [0] * n
    left = [0] * n
    for a in range(n):
        for b in range(n):
            mask = 0
            for gamma in range(g):
                mask |= 1 << int(prod[a, gamma, b])
            pair[a][b] = mask
            right[a] |= mask
            left[b] |= mask
    sandwich = [[0] * n for _ in range(n)]
    for a in range(n):
        for c in range(n):
            mask = 0
            for u in iter_bits(right[a]):
                mask |= pair[u][c]
            sandwich[a][c] = mask
    logger.debug("product_tables_built", instance=instance.name, n=n, g=g)
    return ProductTables(n, add_bits, pair, right, left, sandwich)


_cache: "weakref.WeakKeyDictionary[GammaSemiring, ProductTables]" = weakref.WeakKeyDictionary()
_lock = threading.Lock()


def tables_for(instance: GammaSemiring) -> ProductTables:
    """Shared ProductTables of `instance`, built on first request."""
    with _lock:
        found = _cache.get(instance)
        if found is None:
            found = _build(instance)
            _cache[instance] = found
        return found
