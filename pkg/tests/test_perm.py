import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewprod import catalog
from skewprod.perm import (
    DegreeMismatch,
    ElementCapExceeded,
    ElementIndex,
    NotASubgroup,
    Permutation,
    PermGroup,
    array_orders,
    brute_centralizer,
    brute_normalizer,
    compose,
    compose_arrays,
    core,
    coset_action,
    cycle,
    invert_arrays,
    is_core_free_cyclic,
    is_normal,
    kernel_of_action,
)

import reference as ref


def perms(degree):
    return st.permutations(list(range(degree))).map(lambda xs: Permutation(tuple(xs)))


# composition


def test_compose_left_to_right():
    assert compose(cycle(3, 0, 1), cycle(3, 0, 1, 2)) == cycle(3, 0, 2)


def test_compose_identity_and_inverse_pair():
    q = cycle(5, 0, 3, 1)
    assert compose(Permutation.identity(5), q) == q
    assert compose(cycle(3, 0, 1, 2), cycle(3, 0, 2, 1)).is_identity()


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(cycle(3, 0, 1), cycle(4, 0, 1))


def test_not_a_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_parse_one_based_and_printing():
    p = Permutation.parse("(1,2,3)(4,5)", 6)
    assert p == cycle(6, 0, 1, 2) * cycle(6, 3, 4)
    assert p.to_cycle_string() == "(1,2,3)(4,5)"
    assert Permutation.parse("()", 3).is_identity()
    with pytest.raises(ValueError):
        Permutation.parse("(1,2", 3)


@given(perms(7), perms(7), perms(7))
def test_associativity(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(perms(8))
def test_inverse_and_order(p):
    assert (p * p.inverse()).is_identity()
    assert (p ** p.order()).is_identity()
    assert p ** -1 == p.inverse()


@given(st.lists(perms(6), min_size=1, max_size=20), st.lists(perms(6), min_size=1, max_size=20))
def test_array_composition_matches_objects(ps, qs):
    k = min(len(ps), len(qs))
    P = np.array([p.images for p in ps[:k]])
    Q = np.array([q.images for q in qs[:k]])
    R = compose_arrays(P, Q)
    for i in range(k):
        assert tuple(R[i]) == (ps[i] * qs[i]).images
    assert (compose_arrays(P, invert_arrays(P)) == np.arange(6)).all()
    assert array_orders(P).tolist() == [p.order() for p in ps[:k]]


# groups


@pytest.mark.parametrize("G,order", [
    (lambda: catalog.alternating(5), 60),
    (lambda: catalog.symmetric(7), 5040),
    (lambda: catalog.mathieu(11), 7920),  # frozen: breadth-first closure in tests/reference.py
])
def test_bsgs_orders(G, order):
    assert G().order == order


def test_membership_examples():
    A5 = catalog.alternating(5)
    assert A5.contains(cycle(5, 0, 1, 2))
    assert not A5.contains(cycle(5, 0, 1))
    M11 = catalog.mathieu(11)
    rows = M11.element_array()
    y = next(Permutation(tuple(r)) for r in rows if array_orders(r[None])[0] == 11)
    assert M11.contains(y)
    with pytest.raises(DegreeMismatch):
        A5.contains(cycle(6, 0, 1, 2))


def test_element_iteration():
    assert len(list(catalog.cyclic_regular(5).elements())) == 5
    els = list(catalog.symmetric(4).elements())
    assert len(els) == len(set(els)) == 24
    assert len(catalog.mathieu(11).element_array()) == 7920
    with pytest.raises(ElementCapExceeded):
        catalog.symmetric(8).element_array(cap=1000)


def test_elements_round_trip_and_rejection():
    G = catalog.psl2(7)
    rows = G.element_array()
    assert G.contains_array(rows).all()
    rng = np.random.default_rng(1)
    rand = np.array([rng.permutation(G.degree) for _ in range(300)])
    members = G.contains_array(rand)
    assert members.sum() < 20  # |PSL(2,7)| / 8! is tiny
    idx = ElementIndex(rows)
    assert (idx.contains_rows(rand) == members).all()


def test_element_index_identity_first_and_lookup():
    G = catalog.symmetric(4)
    idx = G.element_index
    assert idx.perm(0).is_identity()
    rows = G.element_array()
    assert (idx.lookup(idx.rows) == np.arange(24)).all()
    assert sorted(idx.lookup(rows).tolist()) == list(range(24))


def test_coset_action_examples():
    S4 = catalog.symmetric(4)
    images, reps = coset_action(S4, S4.stabilizer(3))
    assert len(reps) == 4
    assert kernel_of_action(S4, images).order == 1
    images, reps = coset_action(S4, catalog.alternating(4))
    assert len(reps) == 2
    assert kernel_of_action(S4, images).order == 12


def test_coset_action_psl211_faithful():
    F = catalog.psl2_11_on_11()
    images, reps = coset_action(F.G, F.B)
    assert len(reps) == 11
    assert kernel_of_action(F.G, images).order == 1


def test_core_examples():
    F = catalog.psl2_11_on_11()
    assert core(F.G, F.B).order == 1
    S5 = catalog.symmetric(5)
    assert core(S5, S5).order == 120
    ext = catalog.sym5_extension_candidates()[0]
    assert core(ext.G, ext.B).order == 60


def test_core_requires_subgroup():
    with pytest.raises(NotASubgroup):
        core(catalog.alternating(5), catalog.symmetric(5))


def test_core_equals_coset_kernel_on_theorem_pairs():
    for G, B in [(catalog.symmetric(6), catalog.symmetric(6).stabilizer(5)),
                 (catalog.mathieu(11), catalog.m10()),
                 (catalog.psl2_11_on_11().G, catalog.psl2_11_on_11().B)]:
        images, _ = coset_action(G, B)
        assert kernel_of_action(G, images).order == core(G, B).order == 1


def test_is_normal_examples():
    S5 = catalog.symmetric(5)
    assert is_normal(S5, catalog.alternating(5))
    assert not is_normal(S5, PermGroup([cycle(5, 0, 1)], 5))
    G = catalog.direct_product(catalog.alternating(5), catalog.cyclic_regular(7))
    A = PermGroup([catalog.embed(g, 12, 0) for g in catalog.alternating(5).generators], 12)
    assert is_normal(G, A)


def test_normalizer_examples():
    S5 = catalog.symmetric(5)
    assert brute_normalizer(S5, catalog.alternating(5)).order == 120
    S4 = catalog.symmetric(4)
    # frozen: exhaustive scan over Sym(4) in tests/reference.py gives 8
    assert brute_normalizer(S4, PermGroup([cycle(4, 0, 1) * cycle(4, 2, 3)], 4)).order == 8
    ext = catalog.sym5_extension_candidates()[0]
    N = brute_normalizer(ext.G, ext.B)
    assert ext.B.is_subgroup_of(N) and N.is_subgroup_of(ext.G)


def test_centralizer_examples():
    S3 = catalog.symmetric(3)
    assert brute_centralizer(S3, [cycle(3, 0, 1, 2)]).order == 3
    assert brute_centralizer(S3, [Permutation.identity(3)]).order == 6


def test_reference_values_still_hold():
    S4 = ref.closure([ref.from_cycles(4, (0, 1)), ref.from_cycles(4, (0, 1, 2, 3))], 4)
    H = ref.closure([ref.from_cycles(4, (0, 1), (2, 3))], 4)
    assert ref.normalizer_order(S4, H) == 8
    S3 = ref.closure([ref.from_cycles(3, (0, 1)), ref.from_cycles(3, (0, 1, 2))], 3)
    assert ref.centralizer_order(S3, [ref.from_cycles(3, (0, 1, 2))]) == 3


def test_core_free_cyclic():
    S4 = catalog.symmetric(4)
    assert is_core_free_cyclic(S4, cycle(4, 0, 1, 2, 3))
    S5 = catalog.symmetric(5)
    # in C2 x Sym(3) style products a central element is never core-free
    G = catalog.direct_product(catalog.cyclic_regular(2), catalog.symmetric(3))
    z = catalog.embed(cycle(2, 0, 1), 5, 0)
    assert not is_core_free_cyclic(G, z)
    assert is_core_free_cyclic(S5, cycle(5, 0, 1))


@settings(max_examples=30, deadline=None)
@given(st.lists(perms(6), min_size=1, max_size=3))
def test_generated_group_matches_closure(gens):
    G = PermGroup(gens, 6)
    els = ref.closure([g.images for g in gens], 6)
    assert G.order == len(els)
    assert {tuple(r) for r in G.element_array().tolist()} == els


@settings(max_examples=25, deadline=None)
@given(st.lists(perms(5), min_size=1, max_size=2), perms(5))
def test_core_properties(gens, extra):
    G = catalog.symmetric(5)
    H = PermGroup(gens, 5)
    K = core(G, H)
    assert K.is_subgroup_of(H)
    assert is_normal(G, K)
    # maximal: conjugates of H all contain K, and K is their meet
    Hc = {tuple(r) for r in H.element_array().tolist()}
    conj = {tuple((extra.inverse() * Permutation(r) * extra).images) for r in Hc}
    assert {tuple(r) for r in K.element_array().tolist()} <= conj


def test_transitivity_and_orbits():
    assert catalog.mathieu(11).transitivity() == 4
    G = PermGroup([cycle(6, 0, 1, 2), cycle(6, 3, 4)], 6)
    assert G.orbits() == [[0, 1, 2], [3, 4], [5]]
