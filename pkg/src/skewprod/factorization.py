"""Complementary factorisations G = B<y> and the skew morphisms they induce.

For every b in B there is a unique b' in B and exponent j with
``y * b == b' * y**j``; the map b -> b' is the induced skew morphism and
b -> j its power function.  Exponents are read off from the coset of B that
``y * b`` lands in: cosets are numbered so that coset j is ``B * y**j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .perm import (
    ElementIndex,
    Permutation,
    PermGroup,
    compose_arrays,
    invert_arrays,
    is_core_free_cyclic,
)
from .skew import SkewMorphism

DEFAULT_INDUCE_CAP = 5 * 10**5


class NotComplementary(ValueError):
    pass


class NotCoreFree(ValueError):
    pass


@dataclass(eq=False)
class SkewGeneratingPair:
    """A validated triple (G, B, y) with G = B<y>, B meet <y> = 1 and <y> core-free.

    Internally the pair works in a *working degree*: either G's own degree
    (when B is the full stabilizer of a point ``omega``) or G's degree plus
    |Y| extra points carrying the coset action.  ``label_of_point`` maps
    omega^(y^j) to j.
    """

    G: PermGroup
    B: PermGroup
    y: Permutation
    Y: PermGroup
    m: int
    omega: int
    work_G: PermGroup
    work_B: PermGroup
    work_y: Permutation
    label_of_point: np.ndarray
    name: str = ""
    _lifts: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return self.G.degree

    @property
    def coset_labels(self) -> dict[int, int]:
        """Coset index j (coset B*y^j) keyed by its point in the working action."""
        return {int(p): int(j) for p, j in enumerate(self.label_of_point) if j >= 0}

    def lift(self, g: Permutation) -> Permutation:
        """g extended to the working degree."""
        if self.work_G.degree == self.G.degree:
            return g
        cached = self._lifts.get(g)
        if cached is not None:
            return cached
        d, m = self.G.degree, self.m
        reps_inv = [self.y ** (-j) for j in range(m)]
        ypow = [self.y ** j for j in range(m)]
        img = []
        for j in range(m):
            h = ypow[j] * g
            k = next(k for k in range(m) if self.B.contains(h * reps_inv[k]))
            img.append(d + k)
        out = Permutation._raw(g.images + tuple(img))
        self._lifts[g] = out
        return out


def validate_pair(G: PermGroup, B: PermGroup, y: Permutation, name: str = "") -> SkewGeneratingPair:
    """Check that (B, y) is a skew generating pair for G and build the coset labelling."""
    if B.degree != G.degree or y.degree != G.degree:
        raise NotComplementary("G, B and y must share a degree")
    if not B.is_subgroup_of(G):
        raise NotComplementary("B is not a subgroup of G")
    if not G.contains(y):
        raise NotComplementary("y is not an element of G")
    m = y.order()
    if B.order * m != G.order:
        raise NotComplementary(f"|B|*|<y>| = {B.order}*{m} != |G| = {G.order}")
    power = y
    for k in range(1, m):
        if B.contains(power):
            raise NotComplementary(f"B meets <y> non-trivially (y^{k} lies in B)")
        power = power * y
    if not is_core_free_cyclic(G, y):
        raise NotCoreFree("<y> has a non-trivial core in G")
    Y = PermGroup([y], G.degree, name=f"C{m}")

    omega = _stabilized_point(G, B)
    if omega is not None:
        work_G, work_B, work_y = G, B, y
    else:
        work_G, work_B, work_y, omega = _lift_to_cosets(G, B, y, m)
    labels = np.full(work_G.degree, -1, dtype=np.int64)
    p = omega
    for j in range(m):
        labels[p] = j
        p = work_y(p)
    return SkewGeneratingPair(G, B, y, Y, m, omega, work_G, work_B, work_y, labels, name=name)


def _stabilized_point(G: PermGroup, B: PermGroup) -> int | None:
    """A point whose full stabilizer in G is B, if there is one."""
    index = G.order // B.order
    for w in B.fixed_points():
        if len(G.orbit(w)) == index:
            return w
    return None


def _lift_to_cosets(G: PermGroup, B: PermGroup, y: Permutation, m: int):
    d = G.degree
    ypow = [y ** j for j in range(m)]
    yinv = [p.inverse() for p in ypow]

    def coset_perm(g):
        out = []
        for j in range(m):
            h = ypow[j] * g
            out.append(next(k for k in range(m) if B.contains(h * yinv[k])))
        return out

    def lift(g):
        return Permutation._raw(g.images + tuple(d + k for k in coset_perm(g)))

    work_G = PermGroup([lift(s) for s in G.generators], d + m)
    work_B = work_G.stabilizer(d)
    if work_B.order != B.order:
        raise NotComplementary("coset stabilizer does not match B")
    return work_G, work_B, lift(y), d


def _work_elements(pair: SkewGeneratingPair, cap: int) -> tuple[ElementIndex, np.ndarray]:
    """B's canonical element index (natural degree) and matching working-degree rows."""
    if pair.B.order > cap:
        raise RuntimeError(f"|B| = {pair.B.order} exceeds the induction cap {cap}")
    d = pair.G.degree
    W = pair.work_B.element_array(cap=cap)
    # sort by the natural part so that row i is element i of B's canonical index
    order = np.lexsort(W[:, :d].T[::-1])
    W = np.ascontiguousarray(W[order])
    index = ElementIndex(W[:, :d], presorted=True)
    return index, W


def factor_rows(pair: SkewGeneratingPair, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Factor working-degree rows g as b * y^j; returns (b rows, j array)."""
    j = pair.label_of_point[rows[:, pair.omega]]
    if (j < 0).any():
        raise ValueError("element does not map the base coset into Y's orbit")
    yinv = _inverse_powers(pair)
    b = np.take_along_axis(yinv[j], rows.astype(np.intp), axis=1)
    return b, j


def _inverse_powers(pair: SkewGeneratingPair) -> np.ndarray:
    cached = pair._lifts.get("yinv")
    if cached is None:
        ya = pair.work_y.as_array()
        rows = [np.arange(len(ya), dtype=ya.dtype)]
        yi = invert_arrays(ya)
        for _ in range(1, pair.m):
            rows.append(yi[rows[-1]])
        cached = np.stack(rows)
        pair._lifts["yinv"] = cached
    return cached


def factor_element(pair: SkewGeneratingPair, g: Permutation) -> tuple[Permutation, int]:
    """The unique (b, j) with g = b * y^j, b in B and 0 <= j < |Y|."""
    if not pair.G.contains(g):
        raise ValueError("g is not an element of G")
    w = pair.lift(g)
    b_rows, j = factor_rows(pair, w.as_array()[None, :])
    b = Permutation._raw(tuple(int(x) for x in b_rows[0, :pair.G.degree]))
    if not pair.B.contains(b):
        raise AssertionError("factorisation produced an element outside B")
    return b, int(j[0])


def _induced_tables(pair, u_row: np.ndarray, index: ElementIndex, W: np.ndarray,
                    chunk: int = 1 << 16) -> tuple[np.ndarray, np.ndarray]:
    d = pair.G.degree
    values = np.empty(len(index), dtype=np.int64)
    powers = np.empty(len(index), dtype=np.int64)
    for start in range(0, len(index), chunk):
        rows = W[start:start + chunk]
        ub = rows[:, u_row]  # u then b
        b2, j = factor_rows(pair, ub)
        values[start:start + chunk] = index.lookup(b2[:, :d])
        powers[start:start + chunk] = j
    return values, powers


def induce_skew_morphism(pair: SkewGeneratingPair, cap: int = DEFAULT_INDUCE_CAP,
                         label: str = "") -> SkewMorphism:
    """Tabulate the skew morphism of B induced by y (y*b = phi(b) * y^pi(b))."""
    index, W = _work_elements(pair, cap)
    values, powers = _induced_tables(pair, pair.work_y.as_array(), index, W)
    if values[0] != 0:
        raise AssertionError("induced map does not fix the identity")
    if pair.m > 1 and (powers == 0).any():
        raise AssertionError("power function takes the value 0")
    return SkewMorphism(pair.B, index, values, powers, pair.m, label=label or pair.name)


def induced_map_of(pair: SkewGeneratingPair, u: Permutation, cap: int = DEFAULT_INDUCE_CAP) -> np.ndarray:
    """Value table of b -> b' where u*b = b' * y^j, for u in <y>."""
    if not any(u == pair.y ** k for k in range(pair.m)):
        raise ValueError("u is not an element of <y>")
    index, W = _work_elements(pair, cap)
    values, _ = _induced_tables(pair, pair.lift(u).as_array(), index, W)
    return values


def induce_on_probe(pair: SkewGeneratingPair, probe_rows: np.ndarray,
                    index: ElementIndex | None = None) -> tuple[np.ndarray, np.ndarray]:
    """phi and pi evaluated on a few natural-degree elements of B only.

    With ``index`` the phi values are returned as element indices, otherwise
    as natural-degree rows.
    """
    d = pair.G.degree
    lifted = np.stack([pair.lift(Permutation._raw(tuple(int(x) for x in r))).as_array()
                       for r in probe_rows])
    ub = lifted[:, pair.work_y.as_array()]
    b2, j = factor_rows(pair, ub)
    vals = b2[:, :d]
    if index is not None:
        vals = index.lookup(vals)
    return vals, j


def random_factorisation_check(pair: SkewGeneratingPair, n: int, rng: np.random.Generator,
                               full_scan_max: int = 64) -> bool:
    """Factor n random elements of G and multiply back; with small |Y| also check uniqueness."""
    rows = pair.work_G.random_array(rng, n)
    b, j = factor_rows(pair, rows)
    ypow = invert_arrays(_inverse_powers(pair))
    back = np.take_along_axis(ypow[j], b.astype(np.intp), axis=1)  # b then y^j
    if not (back == rows).all():
        return False
    if not pair.work_B.contains_array(b).all():
        return False
    if pair.m <= full_scan_max:
        yinv = _inverse_powers(pair)
        hits = np.zeros(n, dtype=np.int64)
        for k in range(pair.m):
            cand = compose_arrays(rows, yinv[k])
            hits += pair.work_B.contains_array(cand)
        if not (hits == 1).all():
            return False
    return True
