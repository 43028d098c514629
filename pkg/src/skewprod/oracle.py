"""Two independent censuses of all skew morphisms of a tiny group.

``brute_enumerate`` builds phi cycle by cycle with pruning on the skew rule.
``pipeline_census`` instead scans every permutation y of B fixing the identity
and keeps those for which L(B)<y> is closed under composition, where L(B) is the
left-regular image.  The two must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .perm import PermGroup
from .skew import (
    SkewMorphism,
    cayley_table,
    inverses,
    power_function_from_values,
    verify_axioms,
)

ORACLE_MAX = 12


@dataclass
class MorphismRecord:
    values: tuple[int, ...]
    powers: tuple[int, ...]
    order: int
    kernel_order: int
    automorphism: bool

    def as_dict(self) -> dict:
        return {
            "values": list(self.values),
            "powers": list(self.powers),
            "order": self.order,
            "kernel_order": self.kernel_order,
            "automorphism": self.automorphism,
        }


@dataclass
class OracleResult:
    group_spec: str
    group_order: int
    method: str
    morphisms: list[MorphismRecord] = field(default_factory=list)

    @property
    def total_count(self) -> int:
        return len(self.morphisms)

    @property
    def proper_count(self) -> int:
        return sum(not r.automorphism for r in self.morphisms)

    @property
    def tables(self) -> set[tuple[int, ...]]:
        return {r.values for r in self.morphisms}

    def as_dict(self) -> dict:
        return {
            "group": self.group_spec,
            "group_order": self.group_order,
            "method": self.method,
            "total": self.total_count,
            "proper": self.proper_count,
            "automorphisms": self.total_count - self.proper_count,
            "morphisms": [r.as_dict() for r in self.morphisms],
        }


def _record(B: PermGroup, values: np.ndarray) -> MorphismRecord:
    index = B.element_index
    powers, order = power_function_from_values(index, values)
    phi = SkewMorphism(B, index, values, powers, order)
    rep = verify_axioms(phi)
    if not rep.passed:
        raise AssertionError(f"census produced a non-skew map {values.tolist()}")
    return MorphismRecord(tuple(values.tolist()), tuple(phi.powers.tolist()), order,
                          len(phi.kernel_indices), phi.is_automorphism())


def _finish(B: PermGroup, spec: str, method: str, tables) -> OracleResult:
    recs = [_record(B, np.array(t, dtype=np.int64)) for t in sorted(set(tables))]
    return OracleResult(spec, B.order, method, recs)


def _check_size(B: PermGroup, limit: int):
    if B.order > limit:
        raise ValueError(f"|B| = {B.order} exceeds the oracle limit {limit}")


# ---------------------------------------------------------------------------
# depth-first construction


def _crt_consistent(congruences: list[tuple[int, int]]) -> bool:
    r0, m0 = 0, 1
    for r, m in congruences:
        g = gcd(m0, m)
        if (r - r0) % g:
            return False
        # merge into k = r0 mod lcm(m0, m)
        l = m0 // g * m
        while r0 % m != r % m:
            r0 += m0
        r0 %= l
        m0 = l
    return True


class _Search:
    def __init__(self, M: np.ndarray, inv: np.ndarray):
        self.n = M.shape[0]
        self.M = M.tolist()
        self.inv = inv.tolist()
        self.phi = [-1] * self.n
        self.cyc = [-1] * self.n  # closed-cycle id
        self.pos = [-1] * self.n  # position in its cycle or in the open chain
        self.lengths: list[int] = []
        self.found: list[tuple[int, ...]] = []

    def consistent(self) -> bool:
        n, M, inv, phi, cyc, pos = self.n, self.M, self.inv, self.phi, self.cyc, self.pos
        for a in range(1, n):
            pa = phi[a]
            if pa < 0:
                continue
            row = M[a]
            ipa = M[inv[pa]]
            congr = []
            for b in range(n):
                pab = phi[row[b]]
                if pab < 0:
                    continue
                t = ipa[pab]  # phi(a)^-1 phi(ab), must be phi^k(b)
                cb = cyc[b]
                if cb >= 0:
                    if cyc[t] != cb:
                        return False
                    congr.append(((pos[t] - pos[b]) % self.lengths[cb], self.lengths[cb]))
                elif cyc[t] >= 0:
                    return False
            if congr and not _crt_consistent(congr):
                return False
        return True

    def run(self):
        self.phi[0] = 0
        self.cyc[0] = 0
        self.pos[0] = 0
        self.lengths.append(1)
        self._open_next()

    def _open_next(self):
        start = next((x for x in range(self.n) if self.cyc[x] < 0), None)
        if start is None:
            self.found.append(tuple(self.phi))
            return
        self.pos[start] = 0
        self._extend([start])
        self.pos[start] = -1

    def _extend(self, chain: list[int]):
        last = chain[-1]
        # close the cycle here
        self.phi[last] = chain[0]
        cid = len(self.lengths)
        self.lengths.append(len(chain))
        for x in chain:
            self.cyc[x] = cid
        if self.consistent():
            self._open_next()
        for x in chain:
            self.cyc[x] = -1
        self.lengths.pop()
        # or continue it with an untouched element
        for v in range(self.n):
            if self.cyc[v] >= 0 or self.pos[v] >= 0:
                continue
            self.phi[last] = v
            self.pos[v] = len(chain)
            chain.append(v)
            if self.consistent():
                self._extend(chain)
            chain.pop()
            self.pos[v] = -1
        self.phi[last] = -1


def brute_enumerate(B: PermGroup, spec: str = "", limit: int = ORACLE_MAX) -> OracleResult:
    """All skew morphisms of B by depth-first search with skew-rule pruning."""
    _check_size(B, limit)
    index = B.element_index
    M = cayley_table(index).astype(np.int64)
    s = _Search(M, inverses(index))
    s.run()
    return _finish(B, spec or B.name or "", "brute", s.found)


# ---------------------------------------------------------------------------
# closure census


def _candidates(n: int, chunk: int) -> "itertools.Iterator[np.ndarray]":
    it = itertools.permutations(range(1, n))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        arr = np.zeros((len(block), n), dtype=np.int64)
        arr[:, 1:] = np.array(block, dtype=np.int64).reshape(len(block), n - 1)
        yield arr


def _closed(Yc: np.ndarray, M: np.ndarray, inv: np.ndarray, gens: list[int]) -> np.ndarray:
    """Mask of candidates y with y^i o L_b in L(B)<y> for all i and generators b."""
    K, n = Yc.shape
    ident = np.arange(n)
    powers = [np.broadcast_to(ident, (K, n))]
    for _ in range(1, n):
        powers.append(np.take_along_axis(Yc, powers[-1], axis=1))  # y o y^(k-1)
    P = np.stack(powers)  # (n, K, n)
    order_ok = np.zeros(K, dtype=bool)
    for k in range(1, n):
        order_ok |= (P[k] == ident).all(axis=1)
    ok = order_ok
    for i in range(n - 1):
        for b in gens:
            if not ok.any():
                return ok
            z = P[i][:, M[b]]  # x -> y^i(b*x)
            c = z[:, 0]
            w = M[inv[c][:, None], z]  # L_c^-1 o z fixes the identity
            in_y = np.zeros(K, dtype=bool)
            for k in range(n):
                in_y |= (w == P[k]).all(axis=1)
            ok &= in_y
    return ok


def pipeline_census(B: PermGroup, spec: str = "", limit: int = ORACLE_MAX,
                    chunk: int = 1 << 15) -> OracleResult:
    """All y fixing the identity point with L(B)<y> a group of order |B||y|."""
    _check_size(B, limit)
    index = B.element_index
    n = len(index)
    M = cayley_table(index).astype(np.int64)
    inv = inverses(index)
    gens = _generators(M)
    tables = []
    if n == 1:
        tables.append((0,))
    else:
        for Yc in _candidates(n, chunk):
            keep = Yc[_closed(Yc, M, inv, gens)]
            tables.extend(tuple(r) for r in keep.tolist())
    return _finish(B, spec or B.name or "", "pipeline", tables)


def _generators(M: np.ndarray) -> list[int]:
    n = M.shape[0]
    gens: list[int] = []
    reached = {0}
    for g in range(1, n):
        if len(reached) == n:
            break
        if g in reached:
            continue
        gens.append(g)
        frontier = list(reached)
        while frontier:
            new = []
            for x in frontier:
                for h in gens:
                    z = int(M[x, h])
                    if z not in reached:
                        reached.add(z)
                        new.append(z)
            frontier = new
    return gens


def compare(B: PermGroup, spec: str = "") -> tuple[OracleResult, OracleResult, bool]:
    a = brute_enumerate(B, spec)
    b = pipeline_census(B, spec)
    return a, b, a.tables == b.tables
