import numpy as np
import pytest

from skewprod import catalog
from skewprod.cayley import (
    case6_conjugation_forms,
    case6_table,
    case7_cycle_set,
    certificates_with_signature,
    cycle_through,
    cycles,
    regular_cayley_certificate,
    signature_string,
    verify_case6_cycle_set,
)
from skewprod.factorization import induce_skew_morphism, validate_pair
from skewprod.perm import Permutation, PermGroup, array_orders, cycle
from skewprod.skew import SkewMorphism


@pytest.fixture(scope="module")
def case1_phi():
    F = catalog.psl2_11_on_11()
    rows = F.G.element_array()
    y = Permutation(tuple(rows[array_orders(rows) == 11][0]))
    return induce_skew_morphism(validate_pair(F.G, F.B, y))


def test_cycles_partition_B(case1_phi):
    cyc = cycles(case1_phi)
    flat = [i for c in cyc for i in c]
    assert sorted(flat) == list(range(60))
    for c in cyc:
        assert c[0] == min(c)
        for a, b in zip(c, c[1:] + c[:1]):
            assert case1_phi.values[a] == b


def test_identity_morphism_has_singleton_cycles():
    B = catalog.alternating(5)
    idx = B.element_index
    ident = SkewMorphism(B, idx, np.arange(60), np.ones(60, dtype=np.int64), 1)
    assert len(cycles(ident)) == 60
    assert regular_cayley_certificate(ident) is None


def test_signature_string():
    assert signature_string({5: 4, 2: 3, 3: 4}) == "{2:3, 3:4, 5:4}"
    assert signature_string({}) == "{}"


def test_case1_certificate(case1_phi):
    certs = certificates_with_signature(case1_phi, {2: 3, 3: 4, 5: 4})
    assert len(certs) == 1
    cert = certs[0]
    assert cert.valid and len(cert.cycle) == 11
    assert set(cert.elements) == {g.inverse() for g in cert.elements}
    assert PermGroup(list(cert.elements), 11).order == 60
    d = cert.as_dict()
    assert d["signature"] == "{2:3, 3:4, 5:4}" and d["length"] == 11
    assert certificates_with_signature(case1_phi, {2: 11}) == []


def test_regular_certificate_found(case1_phi):
    cert = regular_cayley_certificate(case1_phi)
    assert cert is not None and cert.valid


def test_cycle_through(case1_phi):
    g = case1_phi.element(1)
    cert = cycle_through(case1_phi, g)
    assert cert.elements[0] == g
    assert case1_phi.values[cert.cycle[-1]] == cert.cycle[0]


@pytest.mark.parametrize("n", [8, 10])
def test_case6_table_matches_conjugation_forms(n):
    table = case6_table(n)
    assert table == case6_conjugation_forms(n)
    assert len(table) == n + 1 and len(set(table)) == n + 1
    assert all(g.images[n] == n for g in table)


@pytest.mark.parametrize("n", [8, 10])
def test_case6_cycle_set(n):
    r = verify_case6_cycle_set(n)
    assert r.ok
    assert r.size == n + 1
    assert r.generated_order == r.target_order


def test_case6_dropping_an_element_fails():
    r = verify_case6_cycle_set(8, drop=1)
    assert not r.ok
    assert not r.inverse_closed  # (1,8,...,3) loses its partner


def test_case6_generation_check_can_fail():
    # two commuting double transpositions of the set generate only a Klein group
    table = case6_table(8)
    assert PermGroup([table[0], table[5]], 9).order == 4


def test_case6_rejects_bad_n():
    with pytest.raises(ValueError):
        verify_case6_cycle_set(9)


@pytest.mark.parametrize("n", [5, 7])
def test_case7_cycle_set(n):
    T, info = case7_cycle_set(n)
    assert all(info.values())
    assert len(T) == n + 1
    assert sum(g.order() == n for g in T) == 2
    assert sum(g.order() == 2 for g in T) == n - 1
