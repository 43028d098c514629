"""Permutations and permutation groups.

Composition is left-to-right throughout: ``p * q`` means "apply p, then q",
so ``(p * q)(x) == q(p(x))``.  Points are 0-based internally; cycle strings
produced for reports are 1-based.

Groups carry a deterministic base and strong generating set built with the
Schreier-Sims algorithm (base points are always the smallest moved point).
Bulk work (element lists, batch membership, conjugation of many elements)
is done on ``numpy`` arrays whose rows are image sequences.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ELEMENT_CAP = 10**7


class DegreeMismatch(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class ElementCapExceeded(RuntimeError):
    pass


def _dtype_for(degree: int):
    return np.uint8 if degree <= 256 else np.uint16


# ---------------------------------------------------------------------------
# Permutation


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., d-1}`` stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.images, tuple):
            object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        # trusted constructor, skips the bijection check
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]],
                    one_based: bool = False) -> "Permutation":
        img = list(range(degree))
        shift = 1 if one_based else 0
        seen: set[int] = set()
        for cyc in cycles:
            pts = [c - shift for c in cyc]
            for x in pts:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x + shift} outside degree {degree}")
                if x in seen:
                    raise ValueError("cycles are not disjoint")
                seen.add(x)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls._raw(tuple(img))

    @classmethod
    def parse(cls, text: str, degree: int, one_based: bool = True) -> "Permutation":
        """Parse cycle notation such as ``"(1,2,3)(4,5)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*[, ]\s*\d+)*)?\s*\))*", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        return cls.from_cycles(degree, cycles, one_based=one_based)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``; relabels the cycles of self by g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def moved_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def to_cycle_string(self, one_based: bool = True) -> str:
        shift = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(x + shift) for x in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycle_string()}, degree={self.degree})"

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=_dtype_for(self.degree))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    if len(p.images) != len(q.images):
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Permutation._raw(tuple([qi[x] for x in p.images]))


def cycle(degree: int, *points: int) -> Permutation:
    """0-based cycle constructor, e.g. ``cycle(5, 0, 1, 2)``."""
    return Permutation.from_cycles(degree, [points])


# raw tuple helpers used in the hot loops of Schreier-Sims

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple([q[x] for x in p])


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


# ---------------------------------------------------------------------------
# batch helpers on arrays of image rows


def compose_arrays(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Row-wise "P then Q" for arrays of shape (N, d) (Q may be a single row)."""
    if Q.ndim == 1:
        return Q[P]
    if P.ndim == 1:
        return Q[:, P]
    return np.take_along_axis(Q, P.astype(np.intp), axis=1)


def invert_arrays(P: np.ndarray) -> np.ndarray:
    if P.ndim == 1:
        out = np.empty_like(P)
        out[P] = np.arange(P.shape[0], dtype=P.dtype)
        return out
    out = np.empty_like(P)
    rows = np.arange(P.shape[0])[:, None]
    out[rows, P] = np.arange(P.shape[1], dtype=P.dtype)[None, :]
    return out


def array_orders(P: np.ndarray) -> np.ndarray:
    """Element orders of the rows of P."""
    n, d = P.shape
    ident = np.arange(d, dtype=P.dtype)
    lengths = np.zeros((n, d), dtype=np.int64)
    cur = P.copy()
    # cycle length of each point = first k with P^k(x) == x
    for k in range(1, d + 1):
        hit = (cur == ident) & (lengths == 0)
        lengths[hit] = k
        if (lengths > 0).all():
            break
        cur = compose_arrays(cur, P)
    out = np.ones(n, dtype=np.int64)
    for col in range(d):
        out = np.lcm(out, lengths[:, col])
    return out


def _row_view(A: np.ndarray) -> np.ndarray:
    A = np.ascontiguousarray(A)
    return A.view(np.dtype((np.void, A.dtype.itemsize * A.shape[1]))).ravel()


class ElementIndex:
    """Canonical indexing of a set of permutations.

    Elements are ordered by the lexicographic order of their image
    sequences; the identity therefore always has index 0 in a group.
    """

    def __init__(self, rows: np.ndarray, presorted: bool = False):
        rows = np.ascontiguousarray(rows)
        if not presorted:
            order = np.lexsort(rows.T[::-1])
            rows = rows[order]
        self.rows = rows
        self._keys = _row_view(rows)

    def __len__(self) -> int:
        return self.rows.shape[0]

    @property
    def degree(self) -> int:
        return self.rows.shape[1]

    def lookup(self, P: np.ndarray, check: bool = True) -> np.ndarray:
        """Indices of the rows of P; raises KeyError if any row is absent."""
        single = P.ndim == 1
        P = np.atleast_2d(P).astype(self.rows.dtype, copy=False)
        keys = _row_view(P)
        idx = np.searchsorted(self._keys, keys)
        if check:
            ok = idx < len(self)
            ok[ok] = self._keys[idx[ok]] == keys[ok]
            if not ok.all():
                raise KeyError("permutation not in the indexed set")
        return idx[0] if single else idx

    def contains_rows(self, P: np.ndarray) -> np.ndarray:
        P = np.atleast_2d(P).astype(self.rows.dtype, copy=False)
        keys = _row_view(P)
        idx = np.searchsorted(self._keys, keys)
        ok = idx < len(self)
        ok[ok] = self._keys[idx[ok]] == keys[ok]
        return ok

    def perm(self, i: int) -> Permutation:
        return Permutation._raw(tuple(int(x) for x in self.rows[i]))


# ---------------------------------------------------------------------------
# Schreier-Sims


@dataclass(frozen=True)
class _Level:
    base_point: int
    strong: tuple[tuple, ...]
    transversal: dict  # orbit point -> coset representative u with u[base_point] == point


def _orbit_transversal(beta: int, gens: Sequence[tuple]) -> dict:
    trans = {beta: tuple(range(len(gens[0]))) if gens else None}
    if not gens:
        return trans
    frontier = [beta]
    while frontier:
        nxt = []
        for p in frontier:
            u = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _mul(u, s)
                    nxt.append(q)
        frontier = nxt
    return trans


def _schreier_sims(gens: Sequence[tuple], degree: int, base_prefix: Sequence[int] = ()):
    ident = tuple(range(degree))
    base = list(base_prefix)
    S = []
    for g in gens:
        if g == ident or g in S:
            continue
        if all(g[b] == b for b in base):
            base.append(next(x for x in range(degree) if g[x] != x))
        S.append(g)

    def fixes_prefix(s, i):
        return all(s[base[j]] == base[j] for j in range(i))

    strong = [[s for s in S if fixes_prefix(s, i)] for i in range(len(base))]
    trans = [_orbit_transversal(base[i], strong[i]) if strong[i] else {base[i]: ident}
             for i in range(len(base))]
    inv_trans = [{p: _inv(u) for p, u in t.items()} for t in trans]

    def sift(h, start):
        for lvl in range(start, len(base)):
            b = h[base[lvl]]
            if b not in inv_trans[lvl]:
                return h, lvl
            h = _mul(h, inv_trans[lvl][b])
        return h, len(base)

    # per-level record of (point, generator) Schreier generators already verified
    checked = [set() for _ in base]
    i = len(base) - 1
    while i >= 0:
        found = None
        for p, u in list(trans[i].items()):
            for s in strong[i]:
                key = (p, s)
                if key in checked[i]:
                    continue
                checked[i].add(key)
                v_inv = inv_trans[i][s[p]]
                h = _mul(_mul(u, s), v_inv)
                if h == ident:
                    continue
                r, j = sift(h, i + 1)
                if j < len(base) or r != ident:
                    found = (r, j)
                    break
            if found:
                break
        if found is None:
            i -= 1
            continue
        r, j = found
        if j == len(base):
            base.append(next(x for x in range(degree) if r[x] != x))
            strong.append([])
            trans.append({base[-1]: ident})
            inv_trans.append({base[-1]: ident})
            checked.append(set())
        for lvl in range(i + 1, j + 1):
            strong[lvl].append(r)
            trans[lvl] = _orbit_transversal(base[lvl], strong[lvl])
            inv_trans[lvl] = {p: _inv(u) for p, u in trans[lvl].items()}
            checked[lvl] = set()
        i = j

    # drop redundant trailing levels (orbit of size one)
    levels = []
    for lvl in range(len(base)):
        levels.append(_Level(base[lvl], tuple(strong[lvl]), trans[lvl]))
    return levels


# ---------------------------------------------------------------------------
# PermGroup


class PermGroup:
    """A permutation group of fixed degree given by generators.

    The stabilizer chain is built on first use and never mutated afterwards.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 name: str | None = None, base_prefix: Sequence[int] = ()):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit degree")
            degree = gens[0].degree
        if degree <= 0:
            raise ValueError("degree must be positive")
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a degree-{degree} group")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self.name = name
        self._base_prefix = tuple(base_prefix)

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree})"

    # -- stabilizer chain -------------------------------------------------

    @cached_property
    def _levels(self) -> list[_Level]:
        if not self.generators:
            return []
        return _schreier_sims([g.images for g in self.generators], self.degree, self._base_prefix)

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = []
        for lv in self._levels:
            for s in lv.strong:
                if s not in seen:
                    seen.append(s)
        return [Permutation._raw(s) for s in seen]

    @property
    def basic_orbit_sizes(self) -> list[int]:
        return [len(lv.transversal) for lv in self._levels]

    @cached_property
    def order(self) -> int:
        return math.prod(self.basic_orbit_sizes)

    def __len__(self) -> int:
        return self.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def with_base_prefix(self, prefix: Sequence[int]) -> "PermGroup":
        return PermGroup(self.generators, self.degree, self.name, base_prefix=prefix)

    @cached_property
    def _inverse_tables(self):
        """Per level: (base point, membership mask over points, inverse reps array)."""
        tables = []
        d = self.degree
        dt = _dtype_for(d)
        for lv in self._levels:
            mask = np.zeros(d, dtype=bool)
            inv = np.tile(np.arange(d, dtype=dt), (d, 1))
            for p, u in lv.transversal.items():
                mask[p] = True
                inv[p] = _inv(u)
            tables.append((lv.base_point, mask, inv))
        return tables

    # -- membership ---------------------------------------------------------

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        h = p.images
        for lvl, lv in enumerate(self._levels):
            b = h[lv.base_point]
            u = lv.transversal.get(b)
            if u is None:
                return Permutation._raw(h), lvl
            h = _mul(h, _inv(u))
        return Permutation._raw(h), len(self._levels)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} element tested against degree-{self.degree} group")
        h, _ = self.sift(p)
        return h.is_identity()

    __contains__ = contains

    def contains_array(self, P: np.ndarray) -> np.ndarray:
        """Vectorised membership test for the rows of P."""
        P = np.atleast_2d(P)
        if P.shape[1] != self.degree:
            raise DegreeMismatch("row length differs from group degree")
        h = P.astype(_dtype_for(self.degree), copy=True)
        ok = np.ones(h.shape[0], dtype=bool)
        for beta, mask, inv in self._inverse_tables:
            img = h[:, beta]
            ok &= mask[img]
            h = np.take_along_axis(inv[img], h.astype(np.intp), axis=1)
        ident = np.arange(self.degree, dtype=h.dtype)
        return ok & (h == ident).all(axis=1)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if other.degree != self.degree:
            return False
        return all(other.contains(g) for g in self.generators)

    # -- elements -----------------------------------------------------------

    def _check_cap(self, cap: int | None):
        cap = DEFAULT_ELEMENT_CAP if cap is None else cap
        if self.order > cap:
            raise ElementCapExceeded(f"group of order {self.order} exceeds element cap {cap}")

    def _transversal_arrays(self) -> list[np.ndarray]:
        dt = _dtype_for(self.degree)
        return [np.array(sorted(lv.transversal.values()), dtype=dt) for lv in self._levels]

    def iter_element_chunks(self, chunk: int = 1 << 18, cap: int | None = None) -> Iterator[np.ndarray]:
        """Yield all elements as arrays of image rows, in bounded-size chunks.

        Every element is yielded exactly once, as a product
        u_k * ... * u_1 of coset representatives down the stabilizer chain.
        """
        self._check_cap(cap)
        dt = _dtype_for(self.degree)
        ident = np.arange(self.degree, dtype=dt)[None, :]
        trans = self._transversal_arrays()
        # deepest levels are expanded in one vectorised block, the rest looped
        split = len(trans)
        size = 1
        while split > 0 and size * len(trans[split - 1]) <= chunk:
            split -= 1
            size *= len(trans[split])
        inner = ident
        for lvl in range(len(trans) - 1, split - 1, -1):
            inner = _right_products(inner, trans[lvl])
        if split == 0:
            yield inner
            return
        yield from self._outer(inner, trans[:split])

    @staticmethod
    def _outer(inner: np.ndarray, outer_levels: list[np.ndarray]) -> Iterator[np.ndarray]:
        d = inner.shape[1]
        ident = np.arange(d, dtype=inner.dtype)
        stack = [(len(outer_levels) - 1, ident)]
        while stack:
            lvl, suffix = stack.pop()
            if lvl < 0:
                yield suffix[inner]
                continue
            for u in outer_levels[lvl][::-1]:
                stack.append((lvl - 1, u[suffix]))

    def element_array(self, cap: int | None = None) -> np.ndarray:
        """All elements as a (order, degree) array sorted lexicographically."""
        chunks = list(self.iter_element_chunks(cap=cap))
        A = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
        order = np.lexsort(A.T[::-1])
        return np.ascontiguousarray(A[order])

    @cached_property
    def element_index(self) -> ElementIndex:
        return ElementIndex(self.element_array(), presorted=True)

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        for chunk in self.iter_element_chunks(cap=cap):
            for row in chunk:
                yield Permutation._raw(tuple(int(x) for x in row))

    def random_element(self, rng: np.random.Generator) -> Permutation:
        g = tuple(range(self.degree))
        for lv in reversed(self._levels):
            reps = list(lv.transversal.values())
            g = _mul(g, reps[int(rng.integers(len(reps)))])
        return Permutation._raw(g)

    def random_array(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n uniformly random elements as image rows."""
        trans = self._transversal_arrays()
        dt = _dtype_for(self.degree)
        out = np.tile(np.arange(self.degree, dtype=dt), (n, 1))
        for T in reversed(trans):
            pick = T[rng.integers(len(T), size=n)]
            out = compose_arrays(out, pick)
        return out

    # -- orbits and stabilizers ----------------------------------------------

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    q = g.images[p]
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        done: set[int] = set()
        out = []
        for p in range(self.degree):
            if p not in done:
                orb = self.orbit(p)
                done.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(points)
        chained = self.with_base_prefix(points)
        levels = chained._levels
        k = len(points)
        gens = []
        if len(levels) > k:
            gens = [Permutation._raw(s) for s in levels[k].strong]
        else:
            # every strong generator fixing the prefix
            gens = [g for g in chained.strong_generators if all(g(p) == p for p in points)]
        return PermGroup(gens, self.degree)

    def transitivity(self) -> int:
        """Largest k such that the group is k-transitive (0 if intransitive)."""
        k = 0
        G = self
        pts: list[int] = []
        remaining = list(range(self.degree))
        while remaining:
            if len(G.orbit(remaining[0])) != len(remaining):
                break
            k += 1
            pts.append(remaining.pop(0))
            G = self.pointwise_stabilizer(pts)
        return k

    def fixed_points(self) -> list[int]:
        return [x for x in range(self.degree) if all(g(x) == x for g in self.generators)]

    # -- subgroup constructions -------------------------------------------------

    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> "PermGroup":
        return PermGroup(list(gens), self.degree, name=name)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for a in gs for b in gs)

    def is_cyclic_by_order(self) -> bool:
        """True iff some element has order equal to the group order (needs element scan)."""
        A = self.element_array()
        return bool((array_orders(A) == self.order).any())

    def exponent_max(self) -> int:
        return int(array_orders(self.element_array()).max())


def generated(gens: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def _right_products(inner: np.ndarray, T: np.ndarray) -> np.ndarray:
    """All products e * t (e in inner, t in T) as a flat array."""
    prod = T[:, inner]  # (e then t)[x] = t[e[x]]
    return prod.reshape(-1, inner.shape[1])


# ---------------------------------------------------------------------------
# group-theoretic operations


def _require_subgroup(G: PermGroup, H: PermGroup):
    if G.degree != H.degree:
        raise NotASubgroup("subgroup relations require equal degree")
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    _require_subgroup(G, H)
    return all(H.contains(h.conjugate_by(g)) for g in G.generators for h in H.generators)


def coset_reps(G: PermGroup, H: PermGroup) -> list[Permutation]:
    """Right coset representatives of H in G, found by orbit search on cosets.

    The first representative is the identity (the base coset H).
    """
    _require_subgroup(G, H)
    index = G.order // H.order
    reps = [Permutation.identity(G.degree)]
    rep_inv = [reps[0]]
    i = 0
    while i < len(reps) and len(reps) < index:
        r = reps[i]
        for s in G.generators:
            c = r * s
            if not any(H.contains(c * ri) for ri in rep_inv):
                reps.append(c)
                rep_inv.append(c.inverse())
        i += 1
    if len(reps) != index:
        raise RuntimeError("coset enumeration incomplete")
    return reps


def coset_label(H: PermGroup, reps_inv: Sequence[Permutation], g: Permutation) -> int:
    for j, ri in enumerate(reps_inv):
        if H.contains(g * ri):
            return j
    raise NotASubgroup("element lies in no enumerated coset")


def coset_action(G: PermGroup, H: PermGroup) -> tuple[dict[Permutation, Permutation], list[Permutation]]:
    """Action of G on the right cosets of H.

    Returns a table sending each generator of G to the permutation it
    induces on the cosets (coset i is ``H * reps[i]``), and the
    representatives themselves.  Use :func:`coset_image` for other elements.
    """
    reps = coset_reps(G, H)
    reps_inv = [r.inverse() for r in reps]
    table = {}
    for s in G.generators:
        table[s] = Permutation([coset_label(H, reps_inv, r * s) for r in reps])
    return table, reps


def coset_image(H: PermGroup, reps: Sequence[Permutation], g: Permutation) -> Permutation:
    reps_inv = [r.inverse() for r in reps]
    return Permutation([coset_label(H, reps_inv, r * g) for r in reps])


def coset_action_group(G: PermGroup, H: PermGroup) -> PermGroup:
    table, reps = coset_action(G, H)
    return PermGroup([table[s] for s in G.generators], len(reps))


def _combined(p: Permutation, q: Permutation) -> Permutation:
    d = p.degree
    return Permutation._raw(p.images + tuple(d + x for x in q.images))


def kernel_of_action(G: PermGroup, images: dict[Permutation, Permutation]) -> PermGroup:
    """Kernel of the homomorphism defined on generators by ``images``."""
    d = G.degree
    gens = [_combined(s, images[s]) for s in G.generators]
    m = next(iter(images.values())).degree if images else 0
    lifted = PermGroup(gens, d + m)
    K = lifted.pointwise_stabilizer(list(range(d, d + m)))
    return PermGroup([Permutation._raw(k.images[:d]) for k in K.generators], d)


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of G contained in H (kernel of the coset action)."""
    _require_subgroup(G, H)
    if G.order == H.order:
        return G
    table, _ = coset_action(G, H)
    return kernel_of_action(G, table)


def is_core_free_cyclic(G: PermGroup, y: Permutation) -> bool:
    """Whether <y> is core-free in G.

    A non-trivial core of a cyclic group contains a subgroup of prime order,
    which is characteristic in it and therefore normal in G; so it suffices to
    test the subgroups <y^(m/p)> for the primes p dividing m.
    """
    m = y.order()
    if m == 1:
        return True
    for p in _prime_factors(m):
        z = y ** (m // p)
        powers = {(z ** k).images for k in range(p)}
        if all(z.conjugate_by(g).images in powers for g in G.generators):
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _group_from_rows(rows: np.ndarray, degree: int) -> PermGroup:
    """Smallest-effort generating set for the group whose elements are the rows."""
    gens: list[Permutation] = []
    H = PermGroup([], degree)
    target = rows.shape[0]
    remaining = rows
    while H.order < target:
        missing = remaining[~H.contains_array(remaining)]
        if missing.shape[0] == 0:
            break
        gens.append(Permutation._raw(tuple(int(x) for x in missing[0])))
        H = PermGroup(gens, degree)
        remaining = missing
    return H


def brute_centralizer(G: PermGroup, S: Iterable[Permutation], cap: int | None = None) -> PermGroup:
    """All g in G commuting with every element of S, by exhaustive scan."""
    G._check_cap(cap)
    S = [s for s in S if not s.is_identity()]
    keep = []
    for chunk in G.iter_element_chunks(cap=cap):
        ok = np.ones(chunk.shape[0], dtype=bool)
        for s in S:
            sa = s.as_array()
            # g*s == s*g  <=>  s[g[x]] == g[s[x]]
            ok &= (sa[chunk] == chunk[:, sa]).all(axis=1)
        keep.append(chunk[ok])
    return _group_from_rows(np.concatenate(keep), G.degree)


def brute_normalizer(G: PermGroup, H: PermGroup, cap: int | None = None) -> PermGroup:
    """All g in G with g^-1 H g = H, by exhaustive scan over G."""
    if G.degree != H.degree:
        raise DegreeMismatch("normalizer needs equal degrees")
    G._check_cap(cap)
    keep = []
    for chunk in G.iter_element_chunks(cap=cap):
        ok = np.ones(chunk.shape[0], dtype=bool)
        inv = invert_arrays(chunk)
        for h in H.generators:
            conj = compose_arrays(compose_arrays(inv, h.as_array()), chunk)
            ok &= H.contains_array(conj)
        keep.append(chunk[ok])
    return _group_from_rows(np.concatenate(keep), G.degree)


def intersection(H: PermGroup, K: PermGroup, cap: int | None = None) -> PermGroup:
    """H meet K, by enumerating the smaller group and testing membership in the other."""
    if H.degree != K.degree:
        raise DegreeMismatch("intersection needs equal degrees")
    small, big = (H, K) if H.order <= K.order else (K, H)
    keep = [c[big.contains_array(c)] for c in small.iter_element_chunks(cap=cap)]
    return _group_from_rows(np.concatenate(keep), H.degree)


def join(H: PermGroup, K: PermGroup) -> PermGroup:
    return PermGroup(list(H.generators) + list(K.generators), H.degree)


def conjugacy_orbits(S: PermGroup, X: np.ndarray) -> list[np.ndarray]:
    """Orbits of S acting by conjugation on the (closed) set of rows X.

    Returns index arrays into X, each orbit sorted, orbits ordered by their
    smallest member.
    """
    index = ElementIndex(X)
    n = len(index)
    parent = np.arange(n)

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for s in S.generators:
        sa = s.as_array()
        si = s.inverse().as_array()
        conj = sa[index.rows[:, si]]  # s^-1 * x * s
        img = index.lookup(conj)
        for a, b in zip(range(n), img.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    roots = np.array([find(a) for a in range(n)])
    # map back to the caller's row order
    caller_order = index.lookup(X)
    groups: dict[int, list[int]] = {}
    for pos, r in zip(range(len(X)), roots[caller_order].tolist()):
        groups.setdefault(r, []).append(pos)
    return [np.array(sorted(v)) for _, v in sorted(groups.items(), key=lambda kv: min(kv[1]))]
