"""Concrete permutation groups used by the verification harness.

All constructors are deterministic: the same arguments always produce the
same generators, so downstream element numbering is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .perm import (
    ElementIndex,
    Permutation,
    PermGroup,
    coset_action,
    is_normal,
)


class UnknownGroupSpec(ValueError):
    pass


def _cyc(degree: int, *pts: int) -> Permutation:
    return Permutation.from_cycles(degree, [pts])


def trivial(degree: int = 1) -> PermGroup:
    return PermGroup([], degree, name="1")


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("symmetric(n) needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(_cyc(n, 0, 1))
    if n >= 3:
        gens.append(_cyc(n, *range(n)))
    return PermGroup(gens, n, name=f"Sym({n})")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("alternating(n) needs n >= 1")
    gens = []
    if n >= 3:
        gens.append(_cyc(n, 0, 1, 2))
        if n >= 4:
            gens.append(_cyc(n, *range(n)) if n % 2 else _cyc(n, *range(1, n)))
    return PermGroup(gens, n, name=f"Alt({n})")


def cyclic_regular(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic_regular(n) needs n >= 1")
    gens = [_cyc(n, *range(n))] if n > 1 else []
    return PermGroup(gens, n, name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n in its action on n >= 3 points (n = 2 gives C2^2 on 4 points)."""
    if n == 2:
        return klein_four()
    if n < 3:
        raise ValueError("dihedral(n) needs n >= 2")
    rot = _cyc(n, *range(n))
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, refl], n, name=f"D{n}")


def klein_four() -> PermGroup:
    return PermGroup([Permutation.from_cycles(4, [(0, 1), (2, 3)]),
                      Permutation.from_cycles(4, [(0, 2), (1, 3)])], 4, name="C2^2")


def quaternion() -> PermGroup:
    """Q8 in its regular representation on 8 points."""
    # points: 1, i, j, k, -1, -i, -j, -k  ->  0..7 ; right multiplication by i and j
    i = Permutation([1, 4, 7, 2, 5, 0, 3, 6])
    j = Permutation([2, 3, 4, 5, 6, 7, 0, 1])
    return PermGroup([i, j], 8, name="Q8")


def direct_product(G1: PermGroup, G2: PermGroup) -> PermGroup:
    """Product acting on the disjoint union of the two point sets."""
    d1, d2 = G1.degree, G2.degree
    gens = [Permutation._raw(g.images + tuple(range(d1, d1 + d2))) for g in G1.generators]
    gens += [Permutation._raw(tuple(range(d1)) + tuple(d1 + x for x in g.images)) for g in G2.generators]
    name = f"{G1.name}x{G2.name}" if G1.name and G2.name else None
    return PermGroup(gens, d1 + d2, name=name)


def embed(p: Permutation, degree: int, offset: int = 0) -> Permutation:
    """Place p on points offset..offset+deg(p)-1 of a larger set, fixing the rest."""
    img = list(range(degree))
    for x, y in enumerate(p.images):
        img[offset + x] = offset + y
    return Permutation._raw(tuple(img))


def wreath_imprimitive(T: PermGroup, H: PermGroup, degree_cap: int = 256) -> PermGroup:
    """T wr H in its imprimitive action on deg(T) * deg(H) points.

    Point (block i, point j) is numbered i * deg(T) + j.
    """
    t, h = T.degree, H.degree
    if t * h > degree_cap:
        raise ValueError(f"wreath degree {t * h} exceeds cap {degree_cap}")
    n = t * h
    gens = [embed(g, n, i * t) for i in range(h) for g in T.generators]
    gens += [block_lift(g, t) for g in H.generators]
    return PermGroup(gens, n, name=f"{T.name}wr{H.name}" if T.name and H.name else None)


def block_lift(h: Permutation, t: int) -> Permutation:
    """Permute blocks of size t according to h, preserving position within blocks."""
    return Permutation._raw(tuple(h.images[i] * t + j for i in range(h.degree) for j in range(t)))


# ---------------------------------------------------------------------------
# finite fields and projective lines


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
    raise ValueError(f"{q} is not a prime power")


class GF:
    """GF(p^k) with elements encoded as integers 0..q-1 (base-p coefficient vectors).

    The modulus is the smallest monic irreducible polynomial of degree k in
    the base-p encoding order, so the field and its element order are fixed.
    """

    def __init__(self, q: int):
        self.p, self.k = prime_power(q)
        self.q = q
        p, k = self.p, self.k
        self.modulus = self._find_modulus() if k > 1 else None
        self.add = [[self._enc([(a + b) % p for a, b in zip(self._dec(x), self._dec(y))])
                     for y in range(q)] for x in range(q)]
        self.mul = [[self._mul(x, y) for y in range(q)] for x in range(q)]
        self.neg = [next(y for y in range(q) if self.add[x][y] == 0) for x in range(q)]
        self.inv = [None] + [next(y for y in range(1, q) if self.mul[x][y] == 1) for x in range(1, q)]
        self.primitive = next(g for g in range(1, q) if self._mult_order(g) == q - 1)

    def _dec(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _enc(self, coeffs: Sequence[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def _polymulmod(self, a: list[int], b: list[int], mod: list[int] | None) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if mod is not None:
            # mod is monic of degree k, given as k+1 coefficients
            for deg in range(len(prod) - 1, k - 1, -1):
                c = prod[deg]
                if c:
                    for i in range(k + 1):
                        prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
        prod = (prod + [0] * k)[:k]
        return prod

    def _mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x * y) % self.p
        return self._enc(self._polymulmod(self._dec(x), self._dec(y), self.modulus))

    def _find_modulus(self) -> list[int]:
        p, k = self.p, self.k
        for code in range(p**k):
            low = [(code // p**i) % p for i in range(k)]
            poly = low + [1]
            if low[0] == 0:
                continue
            if self._irreducible(poly):
                return poly
        raise RuntimeError("no irreducible polynomial found")

    def _irreducible(self, poly: list[int]) -> bool:
        p, k = self.p, self.k
        for deg in range(1, k // 2 + 1):
            for code in range(p**deg):
                div = [(code // p**i) % p for i in range(deg)] + [1]
                if self._divides(div, poly):
                    return False
        return True

    def _divides(self, d: list[int], f: list[int]) -> bool:
        p = self.p
        r = list(f)
        dd = len(d) - 1
        for deg in range(len(r) - 1, dd - 1, -1):
            c = r[deg]
            if c:
                for i in range(dd + 1):
                    r[deg - dd + i] = (r[deg - dd + i] - c * d[i]) % p
        return not any(r[:dd])

    def _mult_order(self, g: int) -> int:
        x, n = g, 1
        while x != 1:
            x = self.mul[x][g]
            n += 1
        return n

    def power(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul[r][x]
        return r


def _mobius(F: GF, a: int, b: int, c: int, d: int) -> Permutation:
    """x -> (a x + b) / (c x + d) on the projective line; infinity is point q."""
    q = F.q
    inf = q
    img = []
    for x in range(q + 1):
        if x == inf:
            num, den = a, c
        else:
            num = F.add[F.mul[a][x]][b]
            den = F.add[F.mul[c][x]][d]
        if den == 0:
            img.append(inf)
        else:
            img.append(F.mul[num][F.inv[den]])
    return Permutation(img)


def psl2(q: int) -> PermGroup:
    """PSL(2, q) on the q + 1 points of the projective line."""
    F = GF(q)
    w = F.primitive
    t = _mobius(F, 1, 1, 0, 1)                         # x -> x + 1
    dsq = _mobius(F, F.mul[w][w], 0, 0, 1)             # x -> w^2 x
    s = _mobius(F, 0, F.neg[1], 1, 0)                  # x -> -1/x
    return PermGroup([t, dsq, s], q + 1, name=f"PSL(2,{q})")


def frobenius(q: int) -> Permutation:
    F = GF(q)
    return Permutation([F.power(x, F.p) for x in range(q)] + [q])


def pgl_sigma_l2(q: int) -> PermGroup:
    """PSigmaL(2, 2^p) = PSL(2, 2^p) extended by the Frobenius map x -> x^2."""
    p, k = prime_power(q)
    if p != 2:
        raise ValueError("pgl_sigma_l2 is provided for q = 2^k only")
    G = psl2(q)
    return PermGroup(list(G.generators) + [frobenius(q)], q + 1, name=f"PSigmaL(2,{q})")


def agl1(p: int) -> PermGroup:
    """AGL(1, p) = {x -> a x + b} on p points."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return PermGroup([_cyc(2, 0, 1)], 2, name="AGL(1,2)")
    g = next(a for a in range(2, p) if len({pow(a, e, p) for e in range(p - 1)}) == p - 1)
    return PermGroup([translation(p), Permutation([(g * x) % p for x in range(p)])], p,
                     name=f"AGL(1,{p})")


def translation(p: int) -> Permutation:
    return Permutation([(x + 1) % p for x in range(p)])


# ---------------------------------------------------------------------------
# Mathieu groups

# Standard generators (as distributed with GAP's MathieuGroup and the ATLAS of
# Group Representations), 1-based cycle notation.
_MATHIEU_GENERATORS = {
    11: ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"],
    23: ["(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
         "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)"],
}

MATHIEU_ORDERS = {11: 7920, 23: 10200960}


def mathieu(n: int) -> PermGroup:
    if n not in _MATHIEU_GENERATORS:
        raise ValueError(f"mathieu({n}) not available; use 11 or 23")
    gens = [Permutation.parse(s, n) for s in _MATHIEU_GENERATORS[n]]
    return PermGroup(gens, n, name=f"M{n}")


def point_stabilizer(G: PermGroup, pt: int) -> PermGroup:
    if not 0 <= pt < G.degree:
        raise ValueError(f"point {pt} outside degree {G.degree}")
    H = G.stabilizer(pt)
    if G.name:
        H.name = f"{G.name}_{pt + 1}"
    return H


def m10() -> PermGroup:
    H = point_stabilizer(mathieu(11), 10)
    H.name = "M10"
    return H


def m22() -> PermGroup:
    H = point_stabilizer(mathieu(23), 22)
    H.name = "M22"
    return H


# ---------------------------------------------------------------------------
# PSL(2,11) on 11 points


@dataclass(frozen=True)
class Factorised:
    """A group G together with a distinguished subgroup B (here a point stabilizer)."""
    G: PermGroup
    B: PermGroup


def find_alt5(G: PermGroup) -> PermGroup:
    """First Alt(5) <= G of the form <a, b> with |a| = 2, |b| = 3, |ab| = 5.

    The search runs over G's sorted element list, so the result is fixed.
    """
    idx = G.element_index
    perms = [idx.perm(i) for i in range(len(idx))]
    invols = [g for g in perms if g.order() == 2]
    threes = [g for g in perms if g.order() == 3]
    a = invols[0]
    for b in threes:
        if (a * b).order() == 5:
            H = PermGroup([a, b], G.degree, name="Alt(5)")
            if H.order == 60:
                return H
    raise ValueError("no Alt(5) found")


@lru_cache(maxsize=None)
def psl2_11_on_11() -> Factorised:
    """PSL(2,11) acting on the 11 right cosets of an Alt(5); B is the stabilizer of point 0."""
    G12 = psl2(11)
    H = find_alt5(G12)
    table, reps = coset_action(G12, H)
    G = PermGroup([table[s] for s in G12.generators], len(reps), name="PSL(2,11)")
    B = G.stabilizer(0)
    B.name = "Alt(5)"
    return Factorised(G, B)


# ---------------------------------------------------------------------------
# regular representations and the Sym(5) extensions


def regular_representation(K: PermGroup) -> tuple[PermGroup, ElementIndex]:
    """Right-regular action of K on its own element indices (identity = point 0)."""
    idx = K.element_index
    rows = idx.rows
    gens = []
    for g in K.generators:
        prods = rows[:, g.as_array()]  # x then g
        gens.append(Permutation._raw(tuple(int(i) for i in idx.lookup(prods))))
    return PermGroup(gens, len(idx), name=K.name), idx


def automorphism_on_points(idx: ElementIndex, func: Callable[[Permutation], Permutation]) -> Permutation:
    """An automorphism of K written as a permutation of K's element indices."""
    imgs = [idx.lookup(func(idx.perm(i)).as_array()) for i in range(len(idx))]
    return Permutation([int(i) for i in imgs])


@dataclass(frozen=True)
class MonolithicExtension:
    """G = C x| Sym(5) with C on points 0..c-1 and Sym(5) on points c..c+4."""
    G: PermGroup
    B: PermGroup       # the Sym(5) complement
    A: PermGroup       # its socle Alt(5)
    C: PermGroup       # the normal subgroup C, equal to C_G(A)
    label: str


def monolithic_extension(C: PermGroup, sigma: Permutation, label: str | None = None) -> MonolithicExtension:
    """Semidirect product C x| Sym(5) where odd permutations act on C through sigma.

    C must act regularly on its points; sigma is a permutation of those points
    normalising C with sigma^2 = 1.
    """
    c = C.degree
    if C.order != c or not C.is_transitive():
        raise ValueError("C must act regularly")
    if not (sigma * sigma).is_identity():
        raise ValueError("sigma must be an involution or the identity")
    for g in C.generators:
        if not C.contains(g.conjugate_by(sigma)):
            raise ValueError("sigma does not normalise C")
    n = c + 5
    cgens = [embed(g, n, 0) for g in C.generators]
    three = embed(_cyc(5, 0, 1, 2), n, c)
    five = embed(_cyc(5, 0, 1, 2, 3, 4), n, c)
    odd = Permutation._raw(sigma.images + tuple(c + x for x in _cyc(5, 0, 1).images))
    name = label or C.name
    G = PermGroup(cgens + [three, five, odd], n, name=f"{name}:Sym(5)")
    B = PermGroup([three, five, odd], n, name="Sym(5)")
    A = PermGroup([three, five], n, name="Alt(5)")
    Cn = PermGroup(cgens, n, name=name)
    return MonolithicExtension(G, B, A, Cn, name or "C")


def _sym3() -> PermGroup:
    return symmetric(3)


def sym5_extension_candidates() -> list[MonolithicExtension]:
    """The six candidate groups C x| Sym(5), one per possible centraliser C.

    In each case sigma is the (unique up to conjugacy) involutory automorphism:
    inversion for cyclic C, a swap of two involutions for C2^2, and
    conjugation by a transposition for Sym(3).
    """
    out = []
    for label, K, auto in [
        ("C3", cyclic_regular(3), lambda g: g.inverse()),
        ("C4", cyclic_regular(4), lambda g: g.inverse()),
        ("C2^2", klein_four(), None),
        ("C5", cyclic_regular(5), lambda g: g.inverse()),
        ("C6", cyclic_regular(6), lambda g: g.inverse()),
        ("Sym(3)", _sym3(), None),
    ]:
        R, idx = regular_representation(K)
        if label == "C2^2":
            a, b = K.generators
            # swap the two generating involutions
            swap = {idx.lookup(x.as_array()).item(): idx.lookup(y.as_array()).item()
                    for x, y in [(a, b), (b, a)]}
            img = list(range(len(idx)))
            for i, j in swap.items():
                img[i] = j
            sigma = Permutation(img)
        elif label == "Sym(3)":
            t = _cyc(3, 0, 1)
            sigma = automorphism_on_points(idx, lambda g, t=t: g.conjugate_by(t))
        else:
            sigma = automorphism_on_points(idx, auto)
        out.append(monolithic_extension(R, sigma, label))
    return out


# ---------------------------------------------------------------------------
# symbolic group specs


_SPEC_PATTERNS: list[tuple[str, Callable[..., PermGroup]]] = [
    (r"(?:sym|s|symmetric)\((\d+)\)|s(\d+)", symmetric),
    (r"(?:alt|a|alternating)\((\d+)\)|a(\d+)", alternating),
    (r"(?:cyclic|c)\((\d+)\)|c(\d+)", cyclic_regular),
    (r"(?:dihedral|d)\((\d+)\)|d(\d+)", dihedral),
    (r"psl2\((\d+)\)", psl2),
    (r"(?:psigmal2|pgl_sigma_l2)\((\d+)\)", pgl_sigma_l2),
    (r"agl1\((\d+)\)", agl1),
    (r"(?:mathieu|m)\((\d+)\)|m(11|23)", mathieu),
]


def parse_group_spec(spec: str) -> PermGroup:
    """Resolve a symbolic group name such as ``alt(7)``, ``c5``, ``m23``, ``c2xc4``.

    Direct products are written with ``x`` between factors.
    """
    s = spec.strip().lower().replace(" ", "")
    if not s:
        raise UnknownGroupSpec("empty group spec")
    special = {
        "q8": quaternion, "klein": klein_four, "v4": klein_four,
        "m10": m10, "m22": m22, "psl2(11):11": lambda: psl2_11_on_11().G,
    }
    if s in special:
        return special[s]()
    if s in ("c2^2", "c2xc2"):
        return klein_four()
    m = re.fullmatch(r"stab\((.+),(\d+)\)", s)
    if m:
        # stabilizer of a 1-based point
        G = parse_group_spec(m.group(1))
        pt = int(m.group(2)) - 1
        if not 0 <= pt < G.degree:
            raise UnknownGroupSpec(f"point {pt + 1} out of range in {spec!r}")
        H = G.stabilizer(pt)
        H.name = spec
        return H
    parts = _split_product(s)
    if len(parts) > 1:
        G = parse_group_spec(parts[0])
        for part in parts[1:]:
            G = direct_product(G, parse_group_spec(part))
        G.name = spec
        return G
    for pattern, ctor in _SPEC_PATTERNS:
        m = re.fullmatch(pattern, s)
        if m:
            arg = int(next(g for g in m.groups() if g is not None))
            G = ctor(arg)
            return G
    raise UnknownGroupSpec(f"unknown group spec {spec!r}")


def _split_product(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p for p in parts if p]


def check_normal_block(ext: MonolithicExtension) -> bool:
    return is_normal(ext.G, ext.A)
