"""
Loop kernels over operation tables.

Kernels are plain Python functions written in the subset numba can compile.
`kernel` compiles them with numba on first use when numba is importable and
`accel.use_numba` is on; otherwise the same loops run as Python.
"""

import functools
from typing import Any, Callable, Dict, TypeVar

import numpy as np
import structlog

from gsr.config.settings import get_settings

logger = structlog.get_logger(__name__)

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    NUMBA_AVAILABLE = False

F = TypeVar("F", bound=Callable[..., Any])


def kernel(func: F) -> F:
    """Compile `func` with numba.njit lazily, falling back to Python."""
    compiled: Dict[str, Any] = {}

    @functools.wraps(func)
    def dispatch(*args: Any) -> Any:
        if NUMBA_AVAILABLE and get_settings().accel.use_numba:
            fn = compiled.get("njit")
            if fn is None:
                logger.debug("kernel_compile", kernel=func.__name__)
                fn = numba.njit(cache=False)(func)
                compiled["njit"] = fn
            return fn(*args)
        return func(*args)

    dispatch.py_func = func  # type: ignore[attr-defined]
    return dispatch  # type: ignore[return-value]


# Row order of the result of first_axiom_violations.
AXIOM_ORDER = (
    "COMM_M",
    "ASSOC_M",
    "COMM_G",
    "ASSOC_G",
    "LDIST",
    "RDIST",
    "GDIST",
    "PASSOC",
)


@kernel
def first_axiom_violations(add_m: np.ndarray, add_g: np.ndarray, prod: np.ndarray) -> np.ndarray:
    """Lexicographically first witness per axiom family.

    Returns an 8x5 int64 array, one row per entry of AXIOM_ORDER. Row k holds
    the witness indices left-aligned, or -1 in column 0 when axiom k holds.
    Witness variable orders: COMM (a, b), ASSOC (a, b, c), LDIST (a, α, b, c),
    RDIST (a, b, α, c), GDIST (a, α, β, b), PASSOC (a, α, b, β, c).
    """
    n = add_m.shape[0]
    g = add_g.shape[0]
    out = np.full((8, 5), -1, dtype=np.int64)

    # COMM_M
    found = False
    for a in range(n):
        for b in range(n):
            if add_m[a, b] != add_m[b, a]:
                out[0, 0] = a
                out[0, 1] = b
                found = True
                break
        if found:
            break

    # ASSOC_M
    found = False
    for a in range(n):
        for b in range(n):
            ab = add_m[a, b]
            for c in range(n):
                if add_m[ab, c] != add_m[a, add_m[b, c]]:
                    out[1, 0] = a
                    out[1, 1] = b
                    out[1, 2] = c
                    found = True
                    break
            if found:
                break
        if found:
            break

    # COMM_G
    found = False
    for x in range(g):
        for y in range(g):
            if add_g[x, y] != add_g[y, x]:
                out[2, 0] = x
                out[2, 1] = y
                found = True
                break
        if found:
            break

    # ASSOC_G
    found = False
    for x in range(g):
        for y in range(g):
            xy = add_g[x, y]
            for z in range(g):
                if add_g[xy, z] != add_g[x, add_g[y, z]]:
                    out[3, 0] = x
                    out[3, 1] = y
                    out[3, 2] = z
                    found = True
                    break
            if found:
                break
        if found:
            break

    # LDIST: a α (b + c) = a α b + a α c
    found = False
    for a in range(n):
        for al in range(g):
            for b in range(n):
                for c in range(n):
                    if prod[a, al, add_m[b, c]] != add_m[prod[a, al, b], prod[a, al, c]]:
                        out[4, 0] = a
                        out[4, 1] = al
                        out[4, 2] = b
                        out[4, 3] = c
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if found:
            break

    # RDIST: (a + b) α c = a α c + b α c
    found = False
    for a in range(n):
        for b in range(n):
            ab = add_m[a, b]
            for al in range(g):
                for c in range(n):
                    if prod[ab, al, c] != add_m[prod[a, al, c], prod[b, al, c]]:
                        out[5, 0] = a
                        out[5, 1] = b
                        out[5, 2] = al
                        out[5, 3] = c
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if found:
            break

    # GDIST: a (α + β) b = a α b + a β b
    found = False
    for a in range(n):
        for al in range(g):
            for be in range(g):
                s = add_g[al, be]
                for b in range(n):
                    if prod[a, s, b] != add_m[prod[a, al, b], prod[a, be, b]]:
                        out[6, 0] = a
                        out[6, 1] = al
                        out[6, 2] = be
                        out[6, 3] = b
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if found:
            break

    # PASSOC: (a α b) β c = a α (b β c)
    found = False
    for a in range(n):
        for al in range(g):
            for b in range(n):
                ab = prod[a, al, b]
                for be in range(g):
                    for c in range(n):
                        if prod[ab, be, c] != prod[a, al, prod[b, be, c]]:
                            out[7, 0] = a
                            out[7, 1] = al
                            out[7, 2] = b
                            out[7, 3] = be
                            out[7, 4] = c
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                break
        if found:
            break

    return out
