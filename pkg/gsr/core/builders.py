"""
Instance builders for the standard desk instances.

- minmax: the chain {1..k} with max as addition and min(a, α, b) as product
- zmod: Z_n with an additively closed set of residues as Γ
- matrix: r×c matrices over Z_p with c×r matrices as Γ and W·α·Y as product
"""

import itertools
from typing import Dict, Iterable, List, Optional, Union

import numpy as np
import structlog

from gsr.config.settings import get_settings
from gsr.core.semiring import AxiomViolation, GammaSemiring, validate
from gsr.errors import (
    AxiomViolationError,
    BadBoundsError,
    CapExceededError,
    GammaNotClosedError,
)

logger = structlog.get_logger(__name__)


def _checked(instance: Union[GammaSemiring, List[AxiomViolation]], name: str) -> GammaSemiring:
    if isinstance(instance, GammaSemiring):
        return instance
    raise AxiomViolationError(f"Builder {name} produced invalid tables", instance)


def build_minmax(k: int, g: int) -> GammaSemiring:
    """Chain {1..k} under max with Γ = {1..g} under max and product min(a, α, b).

    Raises:
        BadBoundsError: unless k >= 1 and 1 <= g <= k
    """
    if k < 1 or g < 1 or g > k:
        raise BadBoundsError(f"minmax needs k >= 1 and 1 <= g <= k, got k={k}, g={g}")
    m = np.arange(k)
    gam = np.arange(g)
    add_m = np.maximum.outer(m, m)
    add_g = np.maximum.outer(gam, gam)
    # Index i stands for the value i + 1 on both carriers, so min commutes with it.
    prod = np.minimum(np.minimum(m[:, None, None], gam[None, :, None]), m[None, None, :])
    name = f"minmax({k},{g})"
    instance = validate(
        add_m,
        add_g,
        prod,
        name=name,
        m_elems=[str(i + 1) for i in range(k)],
        g_elems=[str(i + 1) for i in range(g)],
    )
    return _checked(instance, name)


def build_zmod(n: int, gamma_residues: Iterable[int], name: Optional[str] = None) -> GammaSemiring:
    """Z_n under addition with Γ a set of residues and product a·α·b mod n.

    Raises:
        BadBoundsError: n < 1 or an empty residue set
        GammaNotClosedError: Γ is not closed under addition mod n
    """
    if n < 1:
        raise BadBoundsError(f"zmod needs n >= 1, got {n}")
    residues = sorted({int(r) % n for r in gamma_residues})
    if not residues:
        raise BadBoundsError("zmod needs a nonempty set of Gamma residues")
    present = set(residues)
    for i, alpha in enumerate(residues):
        for beta in residues[: i + 1]:
            total = (alpha + beta) % n
            if total not in present:
                raise GammaNotClosedError(
                    f"Gamma {residues} is not closed mod {n}: {alpha}+{beta} = {total}",
                    witness=(alpha, beta),
                )

    position = {r: i for i, r in enumerate(residues)}
    m = np.arange(n)
    gam = np.array(residues)
    add_m = (m[:, None] + m[None, :]) % n
    add_g = np.vectorize(lambda x: position[int(x)])((gam[:, None] + gam[None, :]) % n)
    prod = (m[:, None, None] * gam[None, :, None] * m[None, None, :]) % n
    label = name or f"zmod({n},{{{','.join(str(r) for r in residues)}}})"
    instance = validate(
        add_m,
        np.asarray(add_g, dtype=np.int64).reshape(len(residues), len(residues)),
        prod,
        name=label,
        m_elems=[str(i) for i in range(n)],
        g_elems=[str(r) for r in residues],
    )
    return _checked(instance, label)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _matrix_label(entries: np.ndarray, p: int) -> str:
    sep = "" if p <= 10 else "."
    return "/".join(sep.join(str(int(x)) for x in row) for row in entries)


def build_matrix(p: int, r: int, c: int, cap: Optional[int] = None) -> GammaSemiring:
    """r×c matrices over Z_p with Γ the c×r matrices and product W·α·Y.

    Matrices are indexed by reading their entries row-major as a base-p
    number, most significant entry first.

    Raises:
        BadBoundsError: p not prime, r or c < 1
        CapExceededError: p^(r·c) above the carrier cap
    """
    if not _is_prime(p) or r < 1 or c < 1:
        raise BadBoundsError(f"matrix needs prime p and r, c >= 1, got p={p}, r={r}, c={c}")
    limit = cap if cap is not None else get_settings().core.carrier_cap
    size = p ** (r * c)
    if size > limit:
        raise CapExceededError(f"matrix({p},{r},{c}) has {size} elements, cap is {limit}")

    digits = np.array(list(itertools.product(range(p), repeat=r * c)), dtype=np.int64)
    weights = p ** np.arange(r * c - 1, -1, -1, dtype=np.int64)
    m_mats = digits.reshape(size, r, c)
    g_mats = digits.reshape(size, c, r)

    def encode(entries: np.ndarray) -> np.ndarray:
        flat = entries.reshape(entries.shape[: -2] + (r * c,))
        return (flat % p) @ weights

    add_m = encode(m_mats[:, None] + m_mats[None, :])
    add_g = encode(g_mats[:, None] + g_mats[None, :])
    prod = encode(np.einsum("aij,gjk,bkl->agbil", m_mats, g_mats, m_mats))

    name = f"matrix({p},{r},{c})"
    instance = validate(
        add_m,
        add_g,
        prod,
        name=name,
        m_elems=[_matrix_label(x, p) for x in m_mats],
        g_elems=[_matrix_label(x, p) for x in g_mats],
    )
    logger.debug("matrix_built", instance=name, size=size)
    return _checked(instance, name)


def desk_instances() -> Dict[str, GammaSemiring]:
    """The five reference instances used throughout the test suites."""
    return {
        "minmax1": build_minmax(1, 1),
        "minmax5": build_minmax(5, 3),
        "z8v": build_zmod(8, {0, 2, 4, 6}, name="z8v"),
        "mat212": build_matrix(2, 1, 2),
        "mat223": build_matrix(2, 2, 3),
    }
