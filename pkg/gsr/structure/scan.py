"""
All-subsets kind scan.

For every nonempty mask of M the scan records which ideal kinds hold, as
one bit per IdealKind in declaration order. Only used while masks fit an
int64, i.e. up to the enumeration cap.
"""

import threading
import weakref
from typing import List, Optional

import numpy as np
import structlog

from gsr.config.settings import get_settings
from gsr.core.kernels import kernel
from gsr.core.semiring import GammaSemiring
from gsr.errors import CapExceededError
from gsr.ideals.kinds import IdealKind
from gsr.setalg.tables import tables_for

logger = structlog.get_logger(__name__)

KIND_BITS = {kind: 1 << i for i, kind in enumerate(IdealKind)}


@kernel
def scan_kind_flags(
    n: int,
    add: np.ndarray,
    pair: np.ndarray,
    right: np.ndarray,
    left: np.ndarray,
    sandwich: np.ndarray,
) -> np.ndarray:
    """Kind bits for masks 0 .. 2^n - 1 (bit order SUB_GSR, GAMMA_IDEAL, QUASI, BI, GEN_BI)."""
    total = 1 << n
    out = np.zeros(total, dtype=np.int64)
    closures = np.zeros(3, dtype=np.int64)
    for mask in range(1, total):
        outside = ~mask
        sums = 0
        words_pair = 0
        words_right = 0
        words_left = 0
        words_sandwich = 0
        for a in range(n):
            if (mask >> a) & 1:
                words_right |= right[a]
                words_left |= left[a]
                for b in range(n):
                    if (mask >> b) & 1:
                        sums |= 1 << add[a, b]
                        words_pair |= pair[a, b]
                        words_sandwich |= sandwich[a, b]

        closures[0] = words_sandwich
        closures[1] = words_right
        closures[2] = words_left
        for k in range(3):
            closed = closures[k]
            frontier = closed
            while frontier != 0:
                fresh = 0
                for a in range(n):
                    if (frontier >> a) & 1:
                        for b in range(n):
                            if (closed >> b) & 1:
                                fresh |= 1 << add[a, b]
                fresh &= ~closed
                closed |= fresh
                frontier = fresh
            closures[k] = closed

        sum_closed = (sums & outside) == 0
        sub = sum_closed and (words_pair & outside) == 0
        flags = 0
        if sub:
            flags |= 1
        if sum_closed and ((words_left | words_right) & outside) == 0:
            flags |= 2
        if sub and (closures[1] & closures[2] & outside) == 0:
            flags |= 4
        if sub and (words_sandwich & outside) == 0:
            flags |= 8
        if (closures[0] & outside) == 0:
            flags |= 16
        out[mask] = flags
    return out


_cache: "weakref.WeakKeyDictionary[GammaSemiring, np.ndarray]" = weakref.WeakKeyDictionary()
_lock = threading.Lock()


def kind_flags(instance: GammaSemiring, cap: Optional[int] = None) -> np.ndarray:
    """Read-only kind bits for every mask of `instance`, computed once.

    Raises:
        CapExceededError: n above the enumeration cap
    """
    limit = cap if cap is not None else get_settings().structure.enumeration_cap
    if instance.n > limit:
        raise CapExceededError(
            f"{instance.name} has {instance.n} elements, subset scans are capped at {limit}"
        )
    with _lock:
        found = _cache.get(instance)
    if found is not None:
        return found
    arrays = tables_for(instance).arrays()
    flags = scan_kind_flags(
        instance.n, arrays["add"], arrays["pair"], arrays["right"], arrays["left"], arrays["sandwich"]
    )
    flags.setflags(write=False)
    logger.debug("kind_scan_done", instance=instance.name, masks=len(flags))
    with _lock:
        _cache[instance] = flags
    return flags


def masks_of_kind(instance: GammaSemiring, kind: IdealKind, cap: Optional[int] = None) -> List[int]:
    """Nonempty masks satisfying `kind`, in increasing order."""
    flags = kind_flags(instance, cap)
    return [int(m) for m in np.flatnonzero(flags & KIND_BITS[kind])]
