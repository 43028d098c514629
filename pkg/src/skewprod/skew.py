"""Skew morphisms stored as index tables over a group's canonical element order.

A skew morphism phi of B with power function pi satisfies
phi(a*b) = phi(a) * phi^pi(a)(b).  Elements of B are numbered by the
lexicographic order of their image sequences (identity = 0), and phi, pi are
integer arrays over that numbering.  pi is kept as a residue modulo
``modulus`` (the order of the cyclic complement it came from).
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from pathlib import Path
from typing import Iterator

import numpy as np

from .perm import (
    ElementIndex,
    Permutation,
    PermGroup,
    _group_from_rows,
    compose_arrays,
    invert_arrays,
    is_core_free_cyclic,
)

EXHAUSTIVE_MAX = 5000
DEFAULT_SAMPLES = 10**6
AUT_SEARCH_MAX = 1000
AUT_CAP = 10**4


# ---------------------------------------------------------------------------
# group arithmetic on element indices


def multiply(index: ElementIndex, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Indices of a*b (a first), elementwise over broadcastable index arrays."""
    a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
    rows = compose_arrays(index.rows[a.ravel()], index.rows[b.ravel()])
    return index.lookup(rows).reshape(a.shape)


def inverses(index: ElementIndex) -> np.ndarray:
    cached = getattr(index, "_inverses", None)
    if cached is None:
        cached = index.lookup(invert_arrays(index.rows))
        index._inverses = cached
    return cached


def cayley_table(index: ElementIndex, limit: int = EXHAUSTIVE_MAX) -> np.ndarray:
    """Full multiplication table M[a, b] = a*b, cached on the index."""
    cached = getattr(index, "_cayley", None)
    if cached is not None:
        return cached
    n = len(index)
    if n > limit:
        raise ValueError(f"multiplication table of {n} elements exceeds limit {limit}")
    dt = np.int16 if n < 2**15 else np.int32
    M = np.empty((n, n), dtype=dt)
    step = max(1, (1 << 17) // n)
    for start in range(0, n, step):
        a = np.arange(start, min(n, start + step))
        # (a then b)[x] = b[a[x]]
        rows = index.rows[:, index.rows[a]]  # (n_b, n_a, d)
        M[a] = index.lookup(rows.reshape(-1, index.degree)).reshape(n, len(a)).T
    index._cayley = M
    return M


def element_orders(index: ElementIndex) -> np.ndarray:
    cached = getattr(index, "_orders", None)
    if cached is None:
        from .perm import array_orders
        cached = array_orders(index.rows)
        index._orders = cached
    return cached


# ---------------------------------------------------------------------------
# the morphism


@dataclass(eq=False)
class SkewMorphism:
    group: PermGroup
    index: ElementIndex
    values: np.ndarray
    powers: np.ndarray
    modulus: int
    label: str = ""
    group_spec: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        self.powers = np.asarray(self.powers, dtype=np.int64) % max(self.modulus, 1)

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def value_table(self) -> np.ndarray:
        return self.values

    @property
    def power_table(self) -> np.ndarray:
        return self.powers

    def element(self, i: int) -> Permutation:
        return self.index.perm(int(i))

    def index_of(self, g: Permutation) -> int:
        return int(self.index.lookup(g.as_array()))

    def __call__(self, g: Permutation) -> Permutation:
        return self.element(self.values[self.index_of(g)])

    def pi(self, g: Permutation) -> int:
        return int(self.powers[self.index_of(g)])

    @cached_property
    def order(self) -> int:
        """Order of phi as a permutation of B, from its cycle lengths."""
        n = self.size
        lengths = np.zeros(n, dtype=np.int64)
        cur = self.values.copy()
        ident = np.arange(n)
        k = 1
        while True:
            hit = (cur == ident) & (lengths == 0)
            lengths[hit] = k
            if (lengths > 0).all():
                break
            cur = self.values[cur]
            k += 1
        out = 1
        for v in np.unique(lengths).tolist():
            out = lcm(out, v)
        if n > 1 and out >= n:
            raise AssertionError(f"skew morphism order {out} is not below |B| = {n}")
        return out

    def iterate(self, k: int) -> np.ndarray:
        """Value table of phi^k."""
        k %= self.order
        out = np.arange(self.size)
        base = self.values
        while k:
            if k & 1:
                out = base[out]
            base = base[base]
            k >>= 1
        return out

    def power_tables(self) -> np.ndarray:
        """Rows phi^0 .. phi^(order-1)."""
        dt = np.int32 if self.size < 2**31 else np.int64
        out = np.empty((self.order, self.size), dtype=dt)
        out[0] = np.arange(self.size)
        for k in range(1, self.order):
            out[k] = self.values[out[k - 1]]
        return out

    @cached_property
    def kernel_indices(self) -> np.ndarray:
        m = max(self.modulus, 1)
        return np.nonzero(self.powers % m == 1 % m)[0]

    @cached_property
    def kernel(self) -> PermGroup:
        """Kernel {a : pi(a) = 1} as a subgroup of B; closure is checked."""
        rows = self.index.rows[self.kernel_indices]
        K = _group_from_rows(rows, self.group.degree)
        if K.order != len(rows):
            raise AssertionError("kernel of the power function is not a subgroup")
        return K

    def is_proper(self) -> bool:
        """True when phi is not an automorphism, i.e. the kernel is a proper subgroup."""
        return len(self.kernel_indices) < self.size

    def is_automorphism(self) -> bool:
        return not self.is_proper()

    def inverse_table(self) -> np.ndarray:
        out = np.empty_like(self.values)
        out[self.values] = np.arange(self.size)
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        vals = self.values.tolist()
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = vals[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = vals[x]
            out.append(tuple(cyc))
        return out

    def fixed_elements(self) -> list[int]:
        """Indices of group elements fixed by phi (phi(b) == b)."""
        return np.nonzero(self.values == np.arange(self.size))[0].tolist()


def same_table(phi: SkewMorphism, psi: SkewMorphism) -> bool:
    return phi.size == psi.size and bool((phi.values == psi.values).all())


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class AxiomReport:
    passed: bool
    mode: str  # "exhaustive" or "sampled"
    pairs_checked: int
    counterexample: tuple[int, int] | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "detail": self.detail,
        }


def verify_axioms(phi: SkewMorphism, exhaustive_max: int = EXHAUSTIVE_MAX,
                  samples: int = DEFAULT_SAMPLES, seed: int = 0) -> AxiomReport:
    """Check phi(ab) = phi(a) phi^pi(a)(b) over all pairs, or over random pairs when |B| is large."""
    n = phi.size
    if len(phi.values) != n or np.bincount(phi.values, minlength=n).max() != 1:
        return AxiomReport(False, "structural", 0, None, "value table is not a bijection")
    if n and phi.values[0] != 0:
        return AxiomReport(False, "structural", 0, None, "identity is not fixed")
    if phi.modulus % phi.order:
        # residues of pi must determine powers of phi
        return AxiomReport(False, "structural", 0, None,
                           f"modulus {phi.modulus} is not a multiple of the order {phi.order}")
    P = phi.power_tables()
    expo = phi.powers % phi.order
    if n <= exhaustive_max:
        M = cayley_table(phi.index, limit=max(exhaustive_max, n))
        step = max(1, (1 << 20) // max(n, 1))
        for start in range(0, n, step):
            a = np.arange(start, min(n, start + step))
            lhs = phi.values[M[a]]
            rhs = M[phi.values[a][:, None], P[expo[a]]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                i, b = bad[0]
                return AxiomReport(False, "exhaustive", n * n, (int(a[i]), int(b)),
                                   "skew product rule fails")
        return AxiomReport(True, "exhaustive", n * n)
    rng = np.random.default_rng(seed)
    done = 0
    batch = 1 << 17
    while done < samples:
        k = min(batch, samples - done)
        a = rng.integers(n, size=k)
        b = rng.integers(n, size=k)
        ab = multiply(phi.index, a, b)
        lhs = phi.values[ab]
        rhs = multiply(phi.index, phi.values[a], P[expo[a], b])
        bad = np.nonzero(lhs != rhs)[0]
        if len(bad):
            i = bad[0]
            return AxiomReport(False, "sampled", done + int(i) + 1, (int(a[i]), int(b[i])),
                               "skew product rule fails")
        done += k
    return AxiomReport(True, "sampled", done)


def power_function_from_values(index: ElementIndex, values: np.ndarray,
                               generators: list[int] | None = None) -> tuple[np.ndarray, int]:
    """Recover a power function for a bijection phi fixing 1, or raise ValueError.

    For each a the exponent k in [1, order] with phi(a*g) = phi(a) * phi^k(g)
    is determined on a generating set; the result still needs verify_axioms.
    Returns (powers, order of phi).
    """
    probe = SkewMorphism(None, index, values, np.zeros(len(index), dtype=np.int64), 1)
    order = probe.order
    P = probe.power_tables()
    n = len(index)
    if generators is None:
        generators = _small_generating_set(index)
    inv = inverses(index)
    allowed = np.ones((n, order), dtype=bool)
    a = np.arange(n)
    for g in generators:
        # phi(a)^-1 phi(a g) must equal phi^k(g)
        target = multiply(index, inv[values[a]], values[multiply(index, a, np.full(n, g))])
        allowed &= P[:, g][None, :] == target[:, None]
    if not allowed.any(axis=1).all():
        raise ValueError("no power function makes this map a skew morphism")
    return allowed.argmax(axis=1).astype(np.int64), order


def _small_generating_set(index: ElementIndex) -> list[int]:
    gens: list[int] = []
    d = index.degree
    H = PermGroup([], d)
    for i in range(1, len(index)):
        if H.order == len(index):
            break
        p = index.perm(i)
        if not H.contains(p):
            gens.append(i)
            H = PermGroup(list(H.generators) + [p], d)
    return gens


def morphism_from_values(group: PermGroup, index: ElementIndex, values: np.ndarray,
                         label: str = "") -> SkewMorphism:
    powers, order = power_function_from_values(index, values)
    return SkewMorphism(group, index, values, powers, order, label=label)


# ---------------------------------------------------------------------------
# kernel criteria


@dataclass
class KernelCheck:
    kernel_order: int
    equals_preimage: bool  # ker = {b : y b y^-1 in B}
    y_normalizes_kernel: bool
    largest_normalized_order: int | None  # order of the meet of all y^j B y^-j
    cosets_not_normalized: bool | None

    @property
    def holds(self) -> bool:
        """ker(phi) contains every subgroup of B normalised by y, and is exactly the preimage set."""
        return self.equals_preimage

    @property
    def kernel_is_normalized(self) -> bool:
        return self.y_normalizes_kernel

    def as_dict(self) -> dict:
        return {
            "kernel_order": self.kernel_order,
            "equals_preimage": self.equals_preimage,
            "y_normalizes_kernel": self.y_normalizes_kernel,
            "largest_normalized_order": self.largest_normalized_order,
            "cosets_not_normalized": self.cosets_not_normalized,
        }


def kernel_is_largest_Y_normalized(pair, phi: SkewMorphism, coset_check_max: int = 64,
                                   meet_max: int = EXHAUSTIVE_MAX) -> KernelCheck:
    """Relate ker(phi) to the subgroups of B normalised by y.

    b lies in the kernel exactly when y b y^-1 lies in B, so any subgroup
    normalised by y sits inside the kernel.  Whether y normalises the kernel
    itself is reported separately: it can fail (the kernel need not be
    phi-invariant).  For small B the largest y-normalised subgroup, the meet
    of the conjugates y^j B y^-j, is computed as well.
    """
    from .perm import intersection

    y = pair.y.as_array()
    yi = pair.y.inverse().as_array()
    rows = phi.index.rows
    conj = compose_arrays(compose_arrays(y, rows), yi)  # y * b * y^-1
    in_B = phi.index.contains_rows(conj)
    ker_mask = np.zeros(phi.size, dtype=bool)
    ker_mask[phi.kernel_indices] = True
    equals_preimage = bool((in_B == ker_mask).all())
    kimg = phi.index.lookup(conj[ker_mask & in_B]) if (ker_mask & in_B).any() else np.array([], int)
    normalized = bool(in_B[ker_mask].all()) and bool(ker_mask[kimg].all())
    largest = None
    cosets = None
    if phi.size <= meet_max:
        D = phi.group
        for j in range(1, pair.m):
            yj = pair.y ** j
            C = PermGroup([g.conjugate_by(yj.inverse()) for g in phi.group.generators], phi.group.degree)
            D = intersection(D, C)
            if D.order == 1:
                break
        largest = D.order
        if phi.size // max(len(phi.kernel_indices), 1) <= coset_check_max:
            cosets = _cosets_not_normalized(pair, phi, ker_mask)
    return KernelCheck(len(phi.kernel_indices), equals_preimage, normalized, largest, cosets)


def _cosets_not_normalized(pair, phi: SkewMorphism, ker_mask: np.ndarray) -> bool:
    """For each right coset K b with b outside K, y does not normalise <K, b>."""
    K = phi.kernel
    rows = phi.index.rows
    seen = ker_mask.copy()
    for b in range(phi.size):
        if seen[b]:
            continue
        H = PermGroup(list(K.generators) + [phi.element(b)], phi.group.degree)
        if all(H.contains(h.conjugate_by(pair.y)) for h in H.generators):
            return False
        seen[phi.index.lookup(compose_arrays(rows[ker_mask], rows[b]))] = True
    return True


# ---------------------------------------------------------------------------
# automorphisms and equivalence


def is_automorphism_map(index: ElementIndex, alpha: np.ndarray, generators: list[int] | None = None) -> bool:
    """Whether the index permutation alpha is an automorphism of the group."""
    n = len(index)
    if np.bincount(alpha, minlength=n).max() != 1 or alpha[0] != 0:
        return False
    gens = generators if generators is not None else _small_generating_set(index)
    x = np.arange(n)
    for g in gens:
        lhs = alpha[multiply(index, x, np.full(n, g))]
        rhs = multiply(index, alpha, np.full(n, alpha[g]))
        if not (lhs == rhs).all():
            return False
    return True


def conjugate(phi: SkewMorphism, alpha: np.ndarray, check: bool = True) -> SkewMorphism:
    """alpha phi alpha^-1 for an automorphism alpha given as an index permutation."""
    alpha = np.asarray(alpha, dtype=np.int64)
    if check and not is_automorphism_map(phi.index, alpha):
        raise ValueError("alpha is not an automorphism of B")
    values = np.empty_like(phi.values)
    powers = np.empty_like(phi.powers)
    values[alpha] = alpha[phi.values]
    powers[alpha] = phi.powers
    psi = SkewMorphism(phi.group, phi.index, values, powers, phi.modulus, label=phi.label,
                       group_spec=phi.group_spec)
    if check:
        rep = verify_axioms(psi, samples=10**4)
        if not rep.passed:
            raise AssertionError("conjugate failed the skew morphism axioms")
    return psi


class AutomorphismSupply:
    """A list of automorphisms of B (possibly with repeats) used for equivalence tests.

    ``count`` is the length of the list; stabilizer sizes are counted in the
    same list, so count / stabilizer is always an orbit size.
    """

    label = ""

    @property
    def count(self) -> int:
        raise NotImplementedError

    @property
    def order(self) -> int:
        """Number of distinct automorphisms represented."""
        raise NotImplementedError

    def images(self, x: np.ndarray, sel: np.ndarray) -> np.ndarray:
        """alpha(x) for alpha in the selected supply entries; shape (len(sel), len(x))."""
        raise NotImplementedError

    def maps(self, sel: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class MapSupply(AutomorphismSupply):
    def __init__(self, maps: np.ndarray, label: str = "", generators: list[np.ndarray] | None = None):
        self._maps = np.asarray(maps)
        self.label = label
        self.generators = generators

    @property
    def count(self) -> int:
        return self._maps.shape[0]

    @property
    def order(self) -> int:
        return self.count

    def images(self, x, sel):
        return self._maps[sel][:, x]

    def maps(self, sel):
        return self._maps[sel]

    def as_perm_group(self) -> PermGroup:
        """The automorphisms as a permutation group on B's element indices."""
        return _group_from_rows(self._maps, self._maps.shape[1])


class ConjugationSupply(AutomorphismSupply):
    """Automorphisms x -> s^-1 x s for s ranging over a group S normalising B."""

    def __init__(self, index: ElementIndex, S: PermGroup, label: str = "", faithful_order: int | None = None):
        self.index = index
        self.S = S
        self.label = label
        self._rows = S.element_array()
        self._inv = invert_arrays(self._rows)
        self._faithful = faithful_order

    @property
    def count(self) -> int:
        return self._rows.shape[0]

    @property
    def order(self) -> int:
        return self._faithful if self._faithful is not None else self.count

    def images(self, x, sel):
        s = self._rows[sel]
        si = self._inv[sel]
        X = self.index.rows[np.asarray(x)]  # (L, d)
        t = X[:, si].transpose(1, 0, 2)  # t[k, i, p] = x_i[s^-1[p]]
        k = np.arange(s.shape[0])[:, None, None]
        r = s[k, t]  # s[x_i[s^-1[p]]]
        return self.index.lookup(r.reshape(-1, X.shape[1])).reshape(s.shape[0], X.shape[0])

    def maps(self, sel):
        return self.images(np.arange(len(self.index)), sel)


def _chunks(n: int, size: int) -> Iterator[np.ndarray]:
    for start in range(0, n, size):
        yield np.arange(start, min(n, start + size))


def _probe(n: int, size: int, seed: int) -> np.ndarray:
    if n <= size:
        return np.arange(n)
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(n, size=size, replace=False))


def intertwiners(phi: SkewMorphism, psi: SkewMorphism, supply: AutomorphismSupply,
                 probe_size: int = 64, chunk: int | None = None, seed: int = 0,
                 first_only: bool = False) -> list[int]:
    """Supply entries alpha with alpha phi alpha^-1 = psi (alpha(phi(x)) == psi(alpha(x)))."""
    n = phi.size
    if chunk is None:
        chunk = max(1, (1 << 20) // max(probe_size * phi.index.degree, 1))
    probe = _probe(n, probe_size, seed)
    found: list[int] = []
    full = np.arange(n)
    for sel in _chunks(supply.count, chunk):
        A = supply.images(probe, sel)
        AP = supply.images(phi.values[probe], sel)
        ok = (AP == psi.values[A]).all(axis=1)
        for k in sel[ok].tolist():
            a = supply.images(full, np.array([k]))[0]
            if (a[phi.values] == psi.values[a]).all():
                found.append(k)
                if first_only:
                    return found
    return found


def centralizer_count(phi: SkewMorphism, supply: AutomorphismSupply, **kw) -> int:
    return len(intertwiners(phi, phi, supply, **kw))


def class_size(phi: SkewMorphism, supply: AutomorphismSupply, cap: int = AUT_CAP, **kw) -> int:
    """Size of phi's class under the supplied automorphisms."""
    if supply.count > cap:
        raise ValueError(f"automorphism supply of {supply.count} exceeds cap {AUT_CAP}")
    return supply.count // centralizer_count(phi, supply, **kw)


def are_equivalent(phi: SkewMorphism, psi: SkewMorphism, supply: AutomorphismSupply, **kw) -> bool:
    if phi.size != psi.size:
        return False
    return bool(intertwiners(phi, psi, supply, first_only=True, **kw))


def class_tables(phi: SkewMorphism, supply: AutomorphismSupply, chunk: int = 256) -> np.ndarray:
    """All distinct conjugate value tables, sorted lexicographically."""
    out = []
    for sel in _chunks(supply.count, chunk):
        A = supply.maps(sel)  # (k, n)
        T = np.empty_like(A)
        k = np.arange(A.shape[0])[:, None]
        T[k, A] = A[:, phi.values]
        out.append(T)
    T = np.unique(np.concatenate(out), axis=0)
    return T


def canonical_representative(phi: SkewMorphism, supply: AutomorphismSupply) -> np.ndarray:
    """Lexicographically smallest value table in phi's class."""
    return class_tables(phi, supply)[0]


# ---------------------------------------------------------------------------
# automorphism group by search


def conjugacy_classes(index: ElementIndex) -> np.ndarray:
    """Class id per element (smallest index in the class)."""
    n = len(index)
    gens = _small_generating_set(index)
    inv = inverses(index)
    x = np.arange(n)
    imgs = [multiply(index, multiply(index, np.full(n, inv[g]), x), np.full(n, g)) for g in gens]
    label = x.copy()
    while True:
        new = label
        for img in imgs:
            new = np.minimum(new, new[img])
        if (new == label).all():
            return label
        label = new


def automorphism_group_search(group: PermGroup, index: ElementIndex | None = None,
                              max_order: int = AUT_SEARCH_MAX) -> MapSupply:
    """All automorphisms of a small group, by extending generator images.

    Picks a generating pair (x1, x2) from the smallest conjugacy classes and
    tries every image pair with matching fingerprints (element order and
    class size); each candidate is extended over the Cayley graph and kept
    when it gives a well-defined bijection.
    """
    index = index or group.element_index
    n = len(index)
    if n > max_order:
        raise ValueError(f"|B| = {n} exceeds the automorphism search limit {max_order}")
    M = cayley_table(index).astype(np.int64)
    orders = element_orders(index)
    cls = conjugacy_classes(index)
    class_size_of = np.bincount(cls, minlength=n)[cls]
    fp = orders * (n + 1) + class_size_of
    gens = _generating_pair(index, M, class_size_of)
    if len(gens) == 1:
        gens = gens * 2
    x1, x2 = gens
    c1 = np.nonzero(fp == fp[x1])[0]
    c2 = np.nonzero(fp == fp[x2])[0]
    prod_fp = fp[M[x1, x2]]
    maps = []
    for y1 in c1.tolist():
        ok2 = c2[fp[M[y1, c2]] == prod_fp]
        for y2 in ok2.tolist():
            f = _extend(M, (x1, x2), (y1, y2))
            if f is not None:
                maps.append(f)
    maps = np.array(sorted(maps, key=lambda a: a.tolist()), dtype=np.int64)
    return MapSupply(maps, label=f"Aut({group.name or 'B'})")


def _generating_pair(index: ElementIndex, M: np.ndarray, class_size_of: np.ndarray) -> list[int]:
    n = len(index)
    if n == 1:
        return [0]
    order = np.lexsort((np.arange(n), class_size_of))
    order = order[order != 0]
    for i in order.tolist():
        if len(_closure(M, [i])) == n:
            return [i]
    for i in order.tolist():
        for j in order.tolist():
            if j != i and len(_closure(M, [i, j])) == n:
                return [i, j]
    raise ValueError("group needs more than two generators")


def _closure(M: np.ndarray, gens: list[int]) -> np.ndarray:
    seen = np.zeros(M.shape[0], dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = np.unique(np.concatenate([M[frontier, g] for g in gens]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return np.nonzero(seen)[0]


def _extend(M: np.ndarray, xs, ys) -> np.ndarray | None:
    n = M.shape[0]
    f = np.full(n, -1, dtype=np.int64)
    f[0] = 0
    frontier = np.array([0])
    while len(frontier):
        new_src, new_img = [], []
        for x, y in zip(xs, ys):
            src = M[frontier, x]
            img = M[f[frontier], y]
            known = f[src] >= 0
            if (f[src[known]] != img[known]).any():
                return None
            new_src.append(src[~known])
            new_img.append(img[~known])
        src = np.concatenate(new_src)
        img = np.concatenate(new_img)
        if not len(src):
            break
        uniq, first = np.unique(src, return_index=True)
        # the same new element reached twice must get one image
        chk = np.empty(n, dtype=np.int64)
        chk[src] = img
        if (chk[src] != img).any():
            return None
        f[uniq] = img[first]
        frontier = uniq
    if (f < 0).any() or np.bincount(f, minlength=n).max() != 1:
        return None
    # homomorphism on generators across all elements
    for x, y in zip(xs, ys):
        if (f[M[:, x]] != M[f, y]).any():
            return None
    return f


# ---------------------------------------------------------------------------
# reconstruction of the skew product group


@dataclass
class ReconstructedProduct:
    group: PermGroup  # <L(B), phi> acting on B's element indices
    left: PermGroup  # L(B)
    phi: Permutation
    order: int
    expected_order: int
    trivial_intersection: bool
    core_free: bool

    @property
    def ok(self) -> bool:
        return self.order == self.expected_order and self.trivial_intersection and self.core_free


def reconstruct_skew_product(phi: SkewMorphism, limit: int = EXHAUSTIVE_MAX) -> ReconstructedProduct:
    """Build <L(B), phi> in Sym(B) and check it factorises as L(B)<phi> with core-free <phi>."""
    n = phi.size
    if n > limit:
        raise ValueError(f"|B| = {n} exceeds reconstruction limit {limit}")
    M = cayley_table(phi.index, limit=max(limit, n))
    gens = _small_generating_set(phi.index)
    # L_b : x -> b*x
    left = [Permutation._raw(tuple(int(v) for v in M[b])) for b in gens]
    L = PermGroup(left, n)
    ph = Permutation._raw(tuple(int(v) for v in phi.values))
    G = PermGroup(left + [ph], n)
    o = ph.order()
    trivial = all(not L.contains(ph ** k) for k in range(1, o))
    return ReconstructedProduct(G, L, ph, G.order, n * o, trivial, is_core_free_cyclic(G, ph))


# ---------------------------------------------------------------------------
# serialisation

_MAGIC = b"SKWM"
_VERSION = 1


def to_bytes(phi: SkewMorphism, spec: str | None = None) -> bytes:
    """Binary form: magic, version, |B|, modulus, spec name, then phi and pi as uint32 arrays."""
    name = (spec if spec is not None else phi.group_spec).encode()
    head = _MAGIC + struct.pack("<HIIH", _VERSION, phi.size, phi.modulus, len(name)) + name
    return head + phi.values.astype("<u4").tobytes() + phi.powers.astype("<u4").tobytes()


def from_bytes(data: bytes, group: PermGroup | None = None) -> SkewMorphism:
    if data[:4] != _MAGIC:
        raise ValueError("not a skew morphism file")
    ver, n, modulus, nlen = struct.unpack_from("<HIIH", data, 4)
    if ver != _VERSION:
        raise ValueError(f"unsupported version {ver}")
    off = 4 + struct.calcsize("<HIIH")
    spec = data[off:off + nlen].decode()
    off += nlen
    values = np.frombuffer(data, dtype="<u4", count=n, offset=off).astype(np.int64)
    powers = np.frombuffer(data, dtype="<u4", count=n, offset=off + 4 * n).astype(np.int64)
    if group is None:
        from .catalog import parse_group_spec
        group = parse_group_spec(spec)
    if group.order != n:
        raise ValueError(f"group {spec!r} has order {group.order}, file has {n}")
    return SkewMorphism(group, group.element_index, values, powers, modulus, group_spec=spec)


def save(phi: SkewMorphism, path: str | Path, spec: str | None = None) -> None:
    Path(path).write_bytes(to_bytes(phi, spec))


def load(path: str | Path, group: PermGroup | None = None) -> SkewMorphism:
    return from_bytes(Path(path).read_bytes(), group)


def to_text(phi: SkewMorphism, spec: str | None = None) -> str:
    """One line per element: index, cycle notation (1-based), phi index, pi."""
    buf = io.StringIO()
    buf.write(f"# group {spec if spec is not None else phi.group_spec}\n")
    buf.write(f"# order {phi.size}\n# modulus {phi.modulus}\n")
    for i in range(phi.size):
        g = phi.element(i).to_cycle_string()
        buf.write(f"{i}\t{g}\t{int(phi.values[i])}\t{int(phi.powers[i])}\n")
    return buf.getvalue()


def from_text(text: str, group: PermGroup | None = None) -> SkewMorphism:
    spec, modulus = "", 1
    values, powers = [], []
    elems = []
    for line in text.splitlines():
        if line.startswith("# group"):
            spec = line[len("# group"):].strip()
        elif line.startswith("# modulus"):
            modulus = int(line.split()[-1])
        elif line and not line.startswith("#"):
            i, g, v, p = line.split("\t")
            elems.append(g)
            values.append(int(v))
            powers.append(int(p))
    if group is None:
        from .catalog import parse_group_spec
        group = parse_group_spec(spec)
    index = group.element_index
    for i, g in enumerate(elems):
        if index.perm(i) != Permutation.parse(g, group.degree):
            raise ValueError(f"element {i} does not match the group's canonical order")
    return SkewMorphism(group, index, np.array(values), np.array(powers), modulus, group_spec=spec)
