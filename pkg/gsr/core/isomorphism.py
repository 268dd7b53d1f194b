"""
Isomorphism testing and canonical forms.

An isomorphism M → M' is a pair of bijections φ on M and ψ on Γ with
φ(a+b) = φ(a)+φ(b), ψ(α+β) = ψ(α)+ψ(β) and φ(aαb) = φ(a)ψ(α)φ(b).
are_isomorphic prunes candidate images by invariant profiles and then
backtracks, so it is exact. canonical_form walks every relabeling and is
meant for census-sized carriers only.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from gsr.core.semiring import GammaSemiring, seal

logger = structlog.get_logger(__name__)

Perm = Tuple[int, ...]


@dataclass(frozen=True)
class IsomorphismWitness:
    """Bijection pair: phi maps M indices, psi maps Γ indices."""
    phi: Perm
    psi: Perm

    @classmethod
    def identity(cls, n: int, g: int) -> "IsomorphismWitness":
        return cls(tuple(range(n)), tuple(range(g)))

    def inverse(self) -> "IsomorphismWitness":
        return IsomorphismWitness(_invert(self.phi), _invert(self.psi))

    def compose(self, then: "IsomorphismWitness") -> "IsomorphismWitness":
        """Apply self first, then `then`."""
        return IsomorphismWitness(
            tuple(then.phi[i] for i in self.phi),
            tuple(then.psi[i] for i in self.psi),
        )

    def to_dict(self) -> Dict[str, List[int]]:
        return {"phi": list(self.phi), "psi": list(self.psi)}


def _invert(perm: Sequence[int]) -> Perm:
    out = [0] * len(perm)
    for i, image in enumerate(perm):
        out[image] = i
    return tuple(out)


def transport_tables(
    add_m: np.ndarray, add_g: np.ndarray, prod: np.ndarray, phi: Sequence[int], psi: Sequence[int]
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tables of the copy relabeled by (phi, psi)."""
    p = np.asarray(phi, dtype=np.int64)
    q = np.asarray(psi, dtype=np.int64)
    inv_p = np.argsort(p)
    inv_q = np.argsort(q)
    new_add_m = p[add_m[np.ix_(inv_p, inv_p)]]
    new_add_g = q[add_g[np.ix_(inv_q, inv_q)]]
    new_prod = p[prod[np.ix_(inv_p, inv_q, inv_p)]]
    return new_add_m, new_add_g, new_prod


def transport(instance: GammaSemiring, witness: IsomorphismWitness, name: Optional[str] = None) -> GammaSemiring:
    """Relabel `instance` along `witness`; labels travel with their elements."""
    add_m, add_g, prod = transport_tables(instance.add_m, instance.add_g, instance.prod, witness.phi, witness.psi)
    inv_p = _invert(witness.phi)
    inv_q = _invert(witness.psi)
    return seal(
        name or instance.name,
        tuple(instance.m_elems[inv_p[i]] for i in range(instance.n)),
        tuple(instance.g_elems[inv_q[i]] for i in range(instance.g)),
        add_m,
        add_g,
        prod,
    )


def _m_profiles(instance: GammaSemiring) -> List[Tuple[int, ...]]:
    add_m, prod = instance.add_m, instance.prod
    diag = np.diagonal(add_m)
    out = []
    for a in range(instance.n):
        out.append(
            (
                int(add_m[a, a] == a),
                int(np.count_nonzero(add_m[a] == a)),
                int(np.count_nonzero(add_m[a] == add_m[a, a])),
                int(np.count_nonzero(diag == a)),
                int(np.count_nonzero(add_m == a)),
                int(np.count_nonzero(prod[a] == a)),
                int(np.count_nonzero(prod == a)),
                len(np.unique(prod[a])),
            )
        )
    return out


def _g_profiles(instance: GammaSemiring) -> List[Tuple[int, ...]]:
    add_g, prod = instance.add_g, instance.prod
    out = []
    for alpha in range(instance.g):
        sliced = prod[:, alpha, :]
        out.append(
            (
                int(add_g[alpha, alpha] == alpha),
                int(np.count_nonzero(add_g[alpha] == alpha)),
                int(np.count_nonzero(add_g == alpha)),
                len(np.unique(sliced)),
                int(np.count_nonzero(sliced == np.arange(instance.n)[:, None])),
            )
        )
    return out


class _Matcher:
    """Backtracking search for (φ, ψ); Γ is assigned before M."""

    def __init__(self, left: GammaSemiring, right: GammaSemiring):
        self.left = left
        self.right = right
        self.n = left.n
        self.g = left.g
        self.phi = [-1] * self.n
        self.phi_inv = [-1] * self.n
        self.psi = [-1] * self.g
        self.psi_inv = [-1] * self.g
        lp, rp = _m_profiles(left), _m_profiles(right)
        lq, rq = _g_profiles(left), _g_profiles(right)
        self.m_candidates = [[j for j in range(self.n) if rp[j] == lp[i]] for i in range(self.n)]
        self.g_candidates = [[j for j in range(self.g) if rq[j] == lq[i]] for i in range(self.g)]
        # Tuples whose result is a given element, to recheck once that result is mapped.
        self.m_results: Dict[int, List[Tuple[int, ...]]] = {i: [] for i in range(self.n)}
        for a in range(self.n):
            for b in range(self.n):
                self.m_results[left.add(a, b)].append((a, b))
            for alpha in range(self.g):
                for b in range(self.n):
                    self.m_results[left.mul(a, alpha, b)].append((a, alpha, b))
        self.g_results: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(self.g)}
        for alpha in range(self.g):
            for beta in range(self.g):
                self.g_results[left.gadd(alpha, beta)].append((alpha, beta))

    def feasible_profiles(self) -> bool:
        lp = sorted(_m_profiles(self.left))
        rp = sorted(_m_profiles(self.right))
        lq = sorted(_g_profiles(self.left))
        rq = sorted(_g_profiles(self.right))
        return lp == rp and lq == rq

    def _m_ok(self, c: int, target: int) -> bool:
        mapped = self.phi[c]
        if mapped >= 0:
            return mapped == target
        owner = self.phi_inv[target]
        return owner < 0

    def _check_g(self, x: int) -> bool:
        left, right = self.left, self.right
        psi = self.psi
        for y in range(self.g):
            if psi[y] < 0:
                continue
            for a, b in ((x, y), (y, x)):
                c = left.gadd(a, b)
                target = right.gadd(psi[a], psi[b])
                if psi[c] >= 0 and psi[c] != target:
                    return False
        for a, b in self.g_results[x]:
            if psi[a] >= 0 and psi[b] >= 0 and right.gadd(psi[a], psi[b]) != psi[x]:
                return False
        return True

    def _check_m(self, x: int) -> bool:
        left, right = self.left, self.right
        phi, psi = self.phi, self.psi
        for y in range(self.n):
            if phi[y] < 0:
                continue
            for a, b in ((x, y), (y, x)):
                if not self._m_ok(left.add(a, b), right.add(phi[a], phi[b])):
                    return False
                for alpha in range(self.g):
                    if not self._m_ok(left.mul(a, alpha, b), right.mul(phi[a], psi[alpha], phi[b])):
                        return False
        for operands in self.m_results[x]:
            if len(operands) == 2:
                a, b = operands
                if phi[a] >= 0 and phi[b] >= 0 and right.add(phi[a], phi[b]) != phi[x]:
                    return False
            else:
                a, alpha, b = operands
                if phi[a] >= 0 and phi[b] >= 0 and right.mul(phi[a], psi[alpha], phi[b]) != phi[x]:
                    return False
        return True

    def _assign_g(self, i: int) -> bool:
        if i == self.g:
            return self._assign_m(0)
        for j in self.g_candidates[i]:
            if self.psi_inv[j] >= 0:
                continue
            self.psi[i], self.psi_inv[j] = j, i
            if self._check_g(i) and self._assign_g(i + 1):
                return True
            self.psi[i], self.psi_inv[j] = -1, -1
        return False

    def _assign_m(self, i: int) -> bool:
        if i == self.n:
            return True
        for j in self.m_candidates[i]:
            if self.phi_inv[j] >= 0:
                continue
            self.phi[i], self.phi_inv[j] = j, i
            if self._check_m(i) and self._assign_m(i + 1):
                return True
            self.phi[i], self.phi_inv[j] = -1, -1
        return False

    def search(self) -> Optional[IsomorphismWitness]:
        if not self.feasible_profiles():
            return None
        if self._assign_g(0):
            return IsomorphismWitness(tuple(self.phi), tuple(self.psi))
        return None


def are_isomorphic(left: GammaSemiring, right: GammaSemiring) -> Optional[IsomorphismWitness]:
    """A witness (φ, ψ) with transport(left, witness) having right's tables, or None."""
    if left.n != right.n or left.g != right.g:
        return None
    if left.same_tables(right):
        return IsomorphismWitness.identity(left.n, left.g)
    witness = _Matcher(left, right).search()
    logger.debug("isomorphism_checked", left=left.name, right=right.name, found=witness is not None)
    return witness


def table_automorphisms(table: np.ndarray) -> List[Perm]:
    """All permutations fixing a binary operation table, identity first."""
    size = table.shape[0]
    out = []
    for perm in itertools.permutations(range(size)):
        p = np.asarray(perm, dtype=np.int64)
        if np.array_equal(p[table], table[np.ix_(p, p)]):
            out.append(perm)
    return out


def canonical_key(
    instance: GammaSemiring,
    m_perms: Optional[Iterable[Perm]] = None,
    g_perms: Optional[Iterable[Perm]] = None,
) -> Tuple[Tuple[int, ...], IsomorphismWitness]:
    """Least table key over the given relabelings (all of them by default)."""
    m_list = list(m_perms) if m_perms is not None else list(itertools.permutations(range(instance.n)))
    g_list = list(g_perms) if g_perms is not None else list(itertools.permutations(range(instance.g)))
    best: Optional[Tuple[int, ...]] = None
    best_witness = IsomorphismWitness.identity(instance.n, instance.g)
    for phi in m_list:
        for psi in g_list:
            tables = transport_tables(instance.add_m, instance.add_g, instance.prod, phi, psi)
            key = tuple(int(x) for x in np.concatenate([t.ravel() for t in tables]))
            if best is None or key < best:
                best = key
                best_witness = IsomorphismWitness(tuple(phi), tuple(psi))
    assert best is not None
    return best, best_witness


def canonical_form(instance: GammaSemiring) -> Tuple[GammaSemiring, IsomorphismWitness]:
    """Representative with the lexicographically least (add_m, add_g, prod) key."""
    _, witness = canonical_key(instance)
    return transport(instance, witness), witness
