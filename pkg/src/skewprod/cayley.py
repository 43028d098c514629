"""Cycles of skew morphisms that certify regular Cayley maps.

A cycle of phi whose elements are closed under inverses and generate B
gives a regular Cayley map.  Certificates are searched in a fixed order:
cycles sorted by (length, smallest element index).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .catalog import alternating, symmetric
from .factorization import factor_element, validate_pair
from .perm import Permutation, PermGroup, cycle
from .skew import SkewMorphism, element_orders, inverses


@dataclass
class CycleCertificate:
    cycle: tuple[int, ...]  # element indices in phi order
    elements: tuple[Permutation, ...]
    inverse_closed: bool
    generates_B: bool
    order_signature: dict[int, int]

    @property
    def valid(self) -> bool:
        return self.inverse_closed and self.generates_B

    def as_dict(self) -> dict:
        return {
            "length": len(self.cycle),
            "cycle": [g.to_cycle_string() for g in self.elements],
            "inverse_closed": self.inverse_closed,
            "generates": self.generates_B,
            "signature": signature_string(self.order_signature),
        }


def signature_string(sig: dict[int, int]) -> str:
    return "{" + ", ".join(f"{k}:{v}" for k, v in sorted(sig.items())) + "}"


def cycles(phi: SkewMorphism) -> list[tuple[int, ...]]:
    """Disjoint cycles of phi on element indices, each starting at its smallest index."""
    return phi.cycles()


def _signature(phi: SkewMorphism, cyc) -> dict[int, int]:
    orders = element_orders(phi.index)
    return dict(sorted(Counter(orders[list(cyc)].tolist()).items()))


def _make(phi: SkewMorphism, cyc, closed: bool) -> CycleCertificate:
    elems = tuple(phi.element(i) for i in cyc)
    gens = PermGroup(list(elems), phi.group.degree)
    return CycleCertificate(tuple(int(i) for i in cyc), elems, closed,
                            gens.order == phi.size, _signature(phi, cyc))


def _closed_cycles(phi: SkewMorphism) -> list[tuple[int, ...]]:
    cyc = sorted(cycles(phi), key=lambda c: (len(c), c[0]))
    cid = np.empty(phi.size, dtype=np.int64)
    for k, c in enumerate(cyc):
        cid[list(c)] = k
    inv = inverses(phi.index)
    bad = np.zeros(len(cyc), dtype=bool)
    bad[cid[cid[inv] != cid]] = True
    return [c for k, c in enumerate(cyc) if not bad[k] and len(c) > 1]


def regular_cayley_certificate(phi: SkewMorphism) -> CycleCertificate | None:
    """First inverse-closed generating cycle in canonical order, or None."""
    for c in _closed_cycles(phi):
        cert = _make(phi, c, True)
        if cert.generates_B:
            return cert
    return None


def certificates_with_signature(phi: SkewMorphism, signature: dict[int, int],
                                limit: int | None = 1) -> list[CycleCertificate]:
    """Valid certificates whose element-order multiset equals ``signature``."""
    want = dict(sorted(signature.items()))
    length = sum(want.values())
    out = []
    for c in _closed_cycles(phi):
        if len(c) != length or _signature(phi, c) != want:
            continue
        cert = _make(phi, c, True)
        if cert.generates_B:
            out.append(cert)
            if limit is not None and len(out) >= limit:
                break
    return out


def cycle_through(phi: SkewMorphism, g: Permutation) -> CycleCertificate:
    """The cycle of phi containing g, with its certificate fields filled in."""
    start = phi.index_of(g)
    cyc = [start]
    x = int(phi.values[start])
    while x != start:
        cyc.append(x)
        x = int(phi.values[x])
    inv = inverses(phi.index)
    closed = set(inv[cyc].tolist()) == set(cyc)
    return _make(phi, cyc, closed)


# ---------------------------------------------------------------------------
# the explicit cycle sets of the alternating and symmetric cases


def iterate_on_element(pair, b: Permutation, steps: int) -> list[Permutation]:
    """b, phi(b), ..., phi^(steps-1)(b), each via one factorisation of y*b."""
    out = [b]
    for _ in range(steps - 1):
        b, _j = factor_element(pair, pair.y * b)
        out.append(b)
    return out


@dataclass
class CycleSetReport:
    n: int
    size: int
    matches_table: bool
    inverse_closed: bool
    contains_five_cycle: bool
    generated_order: int
    target_order: int
    is_phi_cycle: bool

    @property
    def generates(self) -> bool:
        return self.generated_order == self.target_order

    @property
    def ok(self) -> bool:
        return (self.matches_table and self.inverse_closed and self.contains_five_cycle
                and self.generates and self.is_phi_cycle and self.size == self.n + 1)


def case6_table(n: int) -> list[Permutation]:
    """The listed cycle set of the Alt(n) morphism through (1,2)(3,4), from the explicit cycle forms."""
    d = n + 1
    c = lambda *pts: cycle(d, *[p - 1 for p in pts])  # 1-based points
    x = c(1, 2) * c(3, 4)
    out = [
        x,
        c(1, *range(n, 2, -1)),  # (1, n, n-1, ..., 3)
        c(1, *range(3, n + 1)),  # (1, 3, 4, ..., n)
        c(1, n, *range(n - 2, 1, -1)),  # (1, n, n-2, ..., 2)
        c(*range(1, n - 1), n),  # (1, 2, ..., n-2, n)
    ]
    for k in range(5, n + 1):
        a = n - k + 2
        out.append(c(a, a + 1) * c(a + 2, a + 3))
    return out


def case6_conjugation_forms(n: int) -> list[Permutation]:
    """The same set from the conjugation formulas y^k x y^-e_k with y = (1,...,n+1)."""
    d = n + 1
    y = cycle(d, *range(d))
    x = cycle(d, 0, 1) * cycle(d, 2, 3)
    exps = [(0, 0), (1, 2), (2, 1), (3, 4), (4, 3)] + [(k, k) for k in range(5, n + 1)]
    return [(y ** k) * x * (y ** (-e)) for k, e in exps]


def verify_case6_cycle_set(n: int, drop: int | None = None) -> CycleSetReport:
    """Check the listed cycle set S of the Case 6 morphism on Alt(n).

    ``drop`` removes one listed element before the generation test, as a
    regression guard for the generation check itself.
    """
    if n % 2 or not 8 <= n <= 12:
        raise ValueError("n must be even with 8 <= n <= 12")
    d = n + 1
    G = alternating(d)
    B = G.stabilizer(n)
    y = cycle(d, *range(d))
    pair = validate_pair(G, B, y, name=f"alt({d})")
    table = case6_table(n)
    conj = case6_conjugation_forms(n)
    walk = iterate_on_element(pair, table[0], d + 1)
    matches = table == conj
    is_cycle = walk[d] == walk[0] and set(walk[:d]) == set(table) and len(set(walk[:d])) == d
    S = [g for i, g in enumerate(table) if i != drop]
    closed = {g.inverse() for g in S} == set(S)
    # x * y^n x y^-n should be the 5-cycle (1,3,5,4,2)
    five = table[0] * table[-1] == cycle(d, 0, 2, 4, 3, 1)
    H = PermGroup(S, d)
    return CycleSetReport(n, len(S), matches, closed, five, H.order, B.order, is_cycle)


def case7_cycle_set(n: int) -> tuple[list[Permutation], dict]:
    """Cycle of the Sym(n) morphism (y = (1,...,n+1)) through the transposition (1,2)."""
    d = n + 1
    G = symmetric(d)
    B = G.stabilizer(n)
    y = cycle(d, *range(d))
    pair = validate_pair(G, B, y, name=f"sym({d})")
    walk = iterate_on_element(pair, cycle(d, 0, 1), d + 1)
    T = walk[:d]
    ncyc = cycle(d, *range(n))
    transpositions = [cycle(d, i, i + 1) for i in range(n - 1)]
    expected = {ncyc, ncyc.inverse(), *transpositions}
    info = {
        "closes": walk[d] == walk[0],
        "matches": set(T) == expected and len(T) == n + 1,
        "inverse_closed": {g.inverse() for g in T} == set(T),
        "generates": PermGroup(T, d).order == B.order,
        "pair_generates": PermGroup([ncyc, transpositions[0]], d).order == B.order,
    }
    return T, info
