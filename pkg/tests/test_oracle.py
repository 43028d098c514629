from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from skewprod import catalog
from skewprod.oracle import ORACLE_MAX, brute_enumerate, compare, pipeline_census

import reference as ref

# frozen: exhaustive bijection scan in tests/reference.py (total, proper)
FROZEN = {
    "c2": (1, 0), "c3": (2, 0), "c4": (2, 0), "c5": (4, 0), "c6": (4, 2),
    "c7": (6, 0), "c8": (6, 2), "c9": (10, 4), "c10": (8, 4),
    "klein": (6, 0), "sym(3)": (12, 6), "d4": (20, 12), "q8": (24, 0), "c2xc4": (16, 8),
}


@pytest.mark.parametrize("spec", sorted(FROZEN))
def test_brute_matches_frozen(spec):
    res = brute_enumerate(catalog.parse_group_spec(spec), spec)
    assert (res.total_count, res.proper_count) == FROZEN[spec]


@pytest.mark.parametrize("spec", ["c2", "c4", "c6", "c8", "klein", "sym(3)", "d4", "q8", "c2xc4"])
def test_pipeline_agrees_with_brute(spec):
    a, b, ok = compare(catalog.parse_group_spec(spec), spec)
    assert ok and a.tables == b.tables
    assert a.method == "brute" and b.method == "pipeline"


@pytest.mark.parametrize("spec", ["c6", "sym(3)", "d4"])
def test_brute_matches_reference_scan(spec):
    B = catalog.parse_group_spec(spec)
    idx = B.element_index
    els = [tuple(r) for r in idx.rows.tolist()]
    # reference.group_table sorts elements the same way ElementIndex does
    found = set(ref.all_skew_morphisms(els))
    assert brute_enumerate(B, spec).tables == found


@pytest.mark.parametrize("spec", ["c6", "c8", "sym(3)", "d4", "c2xc4"])
def test_proper_morphisms_have_nontrivial_kernel(spec):
    B = catalog.parse_group_spec(spec)
    res = brute_enumerate(B, spec)
    for r in res.morphisms:
        assert r.kernel_order > 1
        assert r.order < B.order
        if not r.automorphism:
            assert r.kernel_order < B.order


def test_automorphism_records_match_reference():
    B = catalog.parse_group_spec("d4")
    els, table = ref.group_table([tuple(r) for r in B.element_index.rows.tolist()])
    for r in brute_enumerate(B).morphisms:
        assert r.automorphism == ref.is_automorphism(table, r.values)
        assert r.automorphism == all(p % r.order == 1 % r.order for p in r.powers)


def test_result_dict():
    d = brute_enumerate(catalog.cyclic_regular(5), "c5").as_dict()
    assert d["total"] == 4 and d["proper"] == 0 and d["automorphisms"] == 4
    assert d["group"] == "c5" and len(d["morphisms"]) == 4


def test_size_limit():
    with pytest.raises(ValueError):
        brute_enumerate(catalog.symmetric(4))
    with pytest.raises(ValueError):
        pipeline_census(catalog.symmetric(4))
    assert ORACLE_MAX >= 10


@settings(max_examples=8, deadline=None)
@given(st.integers(min_value=2, max_value=8))
def test_cyclic_censuses_agree(n):
    a, b, ok = compare(catalog.cyclic_regular(n), f"c{n}")
    assert ok
    # C_n has phi(n) automorphisms, all of them skew
    units = sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    assert a.total_count - a.proper_count == units
