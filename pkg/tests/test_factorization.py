import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewprod import catalog
from skewprod.factorization import (
    NotComplementary,
    NotCoreFree,
    factor_element,
    induce_on_probe,
    induce_skew_morphism,
    induced_map_of,
    random_factorisation_check,
    validate_pair,
)
from skewprod.perm import Permutation, PermGroup, array_orders, cycle, intersection, join
from skewprod.skew import verify_axioms


@pytest.fixture(scope="module")
def psl_pair():
    F = catalog.psl2_11_on_11()
    rows = F.G.element_array()
    y = Permutation(tuple(rows[array_orders(rows) == 11][0]))
    return validate_pair(F.G, F.B, y)


def test_validate_examples(psl_pair):
    assert psl_pair.m == 11 and psl_pair.B.order == 60
    S5 = catalog.symmetric(5)
    p = validate_pair(S5, catalog.alternating(5), cycle(5, 0, 1))
    assert p.m == 2
    S4 = catalog.symmetric(4)
    p = validate_pair(S4, S4.stabilizer(3), cycle(4, 0, 1, 2, 3))
    assert p.m == 4
    assert sorted(p.coset_labels.values()) == [0, 1, 2, 3]


def test_validate_errors():
    S4 = catalog.symmetric(4)
    B = S4.stabilizer(3)
    with pytest.raises(NotComplementary):
        validate_pair(S4, B, cycle(4, 0, 1, 2))  # wrong order
    with pytest.raises(NotComplementary, match="meets"):
        validate_pair(S4, catalog.alternating(4), cycle(4, 0, 1) * cycle(4, 2, 3))
    with pytest.raises(NotComplementary):
        validate_pair(catalog.alternating(4), catalog.alternating(4).stabilizer(3), cycle(4, 0, 1, 2, 3))
    # C2 x C2 = <a> x <b>: <b> is normal, so not core-free
    K = catalog.klein_four()
    a, b = K.generators
    with pytest.raises(NotCoreFree):
        validate_pair(K, PermGroup([a], 4), b)


def test_non_stabilizer_subgroup_uses_coset_lift():
    # D4 inside Sym(4) fixes no point, so labels come from the coset action
    S4 = catalog.symmetric(4)
    B = PermGroup([cycle(4, 0, 1, 2, 3), cycle(4, 0, 2)], 4)
    y = cycle(4, 0, 1, 2)
    pair = validate_pair(S4, B, y)
    assert pair.work_G.degree == 4 + 3
    phi = induce_skew_morphism(pair)
    assert verify_axioms(phi).passed
    rng = np.random.default_rng(0)
    assert random_factorisation_check(pair, 200, rng)


def test_factor_element_examples(psl_pair):
    d = psl_pair.degree
    b, j = factor_element(psl_pair, Permutation.identity(d))
    assert b.is_identity() and j == 0
    b, j = factor_element(psl_pair, psl_pair.y)
    assert b.is_identity() and j == 1
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = psl_pair.B.random_element(rng)
        b, j = factor_element(psl_pair, psl_pair.y * g)
        assert psl_pair.B.contains(b)
        assert b * psl_pair.y ** j == psl_pair.y * g
    with pytest.raises(ValueError):
        factor_element(psl_pair, cycle(d, 0, 1))


def test_unique_factorisation(psl_pair):
    assert random_factorisation_check(psl_pair, 10**4, np.random.default_rng(0))


def test_induce_examples(psl_pair):
    phi = induce_skew_morphism(psl_pair)
    assert phi.size == 60 and phi.order == 11 and phi.is_proper()
    assert phi.values[0] == 0
    assert ((phi.powers >= 1) & (phi.powers < 11)).all()
    S5 = catalog.symmetric(5)
    A5 = catalog.alternating(5)
    t = cycle(5, 0, 1)
    phi = induce_skew_morphism(validate_pair(S5, A5, t))
    assert phi.is_automorphism()
    for i in range(60):
        g = phi.element(i)
        assert phi(g) == g.conjugate_by(t)


def test_induce_alt9_pi_formula():
    G = catalog.alternating(9)
    pair = validate_pair(G, G.stabilizer(8), cycle(9, *range(9)))
    phi = induce_skew_morphism(pair)
    # pi(b) is the (1-based) image of the first point
    assert (phi.powers == phi.index.rows[:, 0] + 1).all()


def test_induce_cap(psl_pair):
    with pytest.raises(RuntimeError):
        induce_skew_morphism(psl_pair, cap=10)


def test_induced_map_injective(psl_pair):
    ident = induced_map_of(psl_pair, Permutation.identity(psl_pair.degree))
    assert (ident == np.arange(60)).all()
    phi = induce_skew_morphism(psl_pair)
    assert (induced_map_of(psl_pair, psl_pair.y) == phi.values).all()
    tables = {induced_map_of(psl_pair, psl_pair.y ** k).tobytes() for k in range(11)}
    assert len(tables) == 11
    with pytest.raises(ValueError):
        induced_map_of(psl_pair, psl_pair.B.generators[0])


def test_probe_matches_full_table(psl_pair):
    phi = induce_skew_morphism(psl_pair)
    probe = phi.index.rows[[0, 5, 17, 42]]
    vals, j = induce_on_probe(psl_pair, probe, index=phi.index)
    assert vals.tolist() == phi.values[[0, 5, 17, 42]].tolist()
    assert j.tolist() == phi.powers[[0, 5, 17, 42]].tolist()


def test_order_identity_on_normal_subgroup():
    # |N| = |BN meet C| |B meet N| for G = BC and N normal
    S4 = catalog.symmetric(4)
    B = S4.stabilizer(3)
    C = PermGroup([cycle(4, 0, 1, 2, 3)], 4)
    N = PermGroup([cycle(4, 0, 1) * cycle(4, 2, 3), cycle(4, 0, 2) * cycle(4, 1, 3)], 4)
    BN = join(B, N)
    assert N.order == intersection(BN, C).order * intersection(B, N).order


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=4, max_value=7), st.permutations(list(range(7))))
def test_full_cycles_always_pair_with_stabilizer(n, shuffle):
    # any conjugate of the n-cycle complements the point stabilizer in Sym(n)
    pts = [x for x in shuffle if x < n]
    y = cycle(n, *pts)
    G = catalog.symmetric(n)
    pair = validate_pair(G, G.stabilizer(n - 1), y)
    phi = induce_skew_morphism(pair)
    assert verify_axioms(phi).passed
    assert phi.order == n
