from math import factorial, gcd

import pytest

from skewprod import catalog
from skewprod.perm import Permutation, PermGroup, brute_centralizer, core, cycle, is_normal

import reference as ref


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_alternating_orders(n):
    assert catalog.symmetric(n).order == factorial(n)
    assert catalog.alternating(n).order == max(1, factorial(n) // 2)


def test_constructor_examples():
    assert catalog.alternating(7).order == 2520
    C11 = catalog.cyclic_regular(11)
    assert C11.order == 11 and C11.is_transitive() and C11.degree == 11
    assert catalog.symmetric(6).order == 720
    with pytest.raises(ValueError):
        catalog.symmetric(0)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11])
def test_psl2_order_formula(q):
    G = catalog.psl2(q)
    assert G.degree == q + 1
    assert G.order == q * (q * q - 1) // gcd(2, q - 1)


def test_psl2_examples():
    assert catalog.psl2(11).order == 660
    G = catalog.psl2(4)
    assert G.order == 60 and G.transitivity() >= 2  # Alt(5) acting on 5 points
    with pytest.raises(ValueError):
        catalog.psl2(6)


def test_pgl_sigma_l2():
    # frozen: breadth-first closure of the generators gives 1512 = 3 * 504
    G = catalog.pgl_sigma_l2(8)
    assert G.degree == 9 and G.order == 1512
    assert catalog.pgl_sigma_l2(4).order == 120
    assert is_normal(G, catalog.psl2(8))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_agl1(p):
    G = catalog.agl1(p)
    assert G.degree == p and G.order == p * (p - 1)
    assert G.transitivity() >= 2 or p == 2


def test_agl1_small_cases():
    assert catalog.agl1(3).order == catalog.symmetric(3).order == 6
    assert catalog.agl1(2).order == 2
    with pytest.raises(ValueError):
        catalog.agl1(4)


def test_mathieu():
    M11 = catalog.mathieu(11)
    assert M11.order == 7920 and M11.transitivity() == 4
    assert catalog.point_stabilizer(M11, 10).order == 720
    M23 = catalog.mathieu(23)
    assert M23.order == 10200960
    assert M23.transitivity() == 4
    assert catalog.point_stabilizer(M23, 22).order == 443520
    with pytest.raises(ValueError):
        catalog.mathieu(12)


def test_mathieu_order_from_reference_closure():
    M11 = catalog.mathieu(11)
    assert len(ref.closure([g.images for g in M11.generators], 11)) == 7920


def test_m10_m22():
    assert catalog.m10().order == 720
    assert catalog.m22().order == 443520


def test_direct_product():
    G = catalog.direct_product(catalog.alternating(5), catalog.cyclic_regular(3))
    assert G.order == 180 and G.degree == 8
    A5 = catalog.alternating(5)
    assert catalog.direct_product(A5, catalog.trivial(1)).order == 60
    P = catalog.direct_product(catalog.pgl_sigma_l2(8), catalog.agl1(3))
    assert P.order == 9072


def test_wreath():
    G = catalog.wreath_imprimitive(catalog.alternating(5), catalog.symmetric(4))
    assert G.degree == 20 and G.order == 60 ** 4 * 24
    D = catalog.wreath_imprimitive(catalog.cyclic_regular(2), catalog.cyclic_regular(2))
    assert D.order == 8 and not D.is_abelian()
    T = catalog.wreath_imprimitive(catalog.alternating(5), catalog.trivial(1))
    assert T.order == 60
    with pytest.raises(ValueError):
        catalog.wreath_imprimitive(catalog.symmetric(20), catalog.symmetric(20))


def test_monolithic_extensions():
    exts = {e.label: e for e in catalog.sym5_extension_candidates()}
    assert list(exts) == ["C3", "C4", "C2^2", "C5", "C6", "Sym(3)"]
    for e in exts.values():
        c = e.C.order
        assert e.G.order == 120 * c
        assert is_normal(e.G, e.A)
        assert brute_centralizer(e.G, e.A.generators).order == c
        assert catalog.check_normal_block(e)
    assert exts["C3"].G.order == 360
    assert core(exts["C3"].G, exts["C3"].B).order == 60
    assert exts["C2^2"].G.order == 480


def test_monolithic_trivial_twist_is_direct():
    C5 = catalog.cyclic_regular(5)
    e = catalog.monolithic_extension(C5, Permutation.identity(5), "C5")
    assert is_normal(e.G, e.B)


def test_monolithic_rejects_bad_sigma():
    C4 = catalog.cyclic_regular(4)
    with pytest.raises(ValueError):
        catalog.monolithic_extension(C4, cycle(4, 0, 1, 2, 3))  # not an involution
    with pytest.raises(ValueError):
        catalog.monolithic_extension(C4, cycle(4, 0, 1))  # does not normalise C4
    with pytest.raises(ValueError):
        catalog.monolithic_extension(catalog.symmetric(3), Permutation.identity(3))


@pytest.mark.parametrize("spec,order", [
    ("c5", 5), ("sym(4)", 24), ("alt(5)", 60), ("klein", 4), ("c2^2", 4), ("q8", 8),
    ("d4", 8), ("c2xc4", 8), ("c2xc2xc2", 8), ("m11", 7920), ("psl2(7)", 168), ("agl1(5)", 20),
    ("stab(sym(5),5)", 24), ("m10", 720),
])
def test_parse_group_spec(spec, order):
    assert catalog.parse_group_spec(spec).order == order


def test_parse_group_spec_unknown():
    with pytest.raises(catalog.UnknownGroupSpec):
        catalog.parse_group_spec("foo(3)")
    with pytest.raises(catalog.UnknownGroupSpec):
        catalog.parse_group_spec("stab(sym(4),9)")


def test_psl2_11_on_11():
    F = catalog.psl2_11_on_11()
    assert F.G.degree == 11 and F.G.order == 660 and F.B.order == 60
    assert F.G.transitivity() == 2
