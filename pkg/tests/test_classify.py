import numpy as np
import pytest

from skewprod import catalog
from skewprod.classify import (
    CaseReport,
    Settings,
    _guarded,
    alternating_pair,
    enumerate_case,
    order_identity,
    verify_case6_injectivity,
    verify_example_centralizer,
    verify_example_sharp,
    verify_example_wreath,
    verify_pi_formula,
    verify_prop_index2,
    verify_theorem_cases,
)
from skewprod.factorization import factor_element
from skewprod.perm import PermGroup, cycle


def test_report_check_and_dict():
    r = CaseReport("x", "demo")
    assert r.check("a", "anchor a", 3, 3)
    assert not r.check("b", "anchor b", 3, 4)
    assert r.check("c", "anchor c", 1, 2, passed=True)
    assert not r.passed
    assert [c.id for c in r.failed_claims()] == ["b"]
    d = r.as_dict()
    assert d["passed"] is False and len(d["claims"]) == 3
    r2 = CaseReport("y", "np values")
    r2.check("n", "numpy ints serialise", np.int64(5), np.int64(5))
    assert r2.as_dict()["claims"][0]["observed"] == 5


def test_guarded_turns_crash_into_failed_claim():
    def boom(r):
        r.check("before", "runs", 1, 1)
        raise RuntimeError("broken")
    rep = _guarded(CaseReport("z", "crash"), boom)
    assert not rep.passed
    assert rep.claims[-1].id == "completed"
    assert "RuntimeError" in rep.claims[-1].observed
    assert rep.extra["traceback"]


def test_enumerate_case_rejects_unknown():
    with pytest.raises(ValueError):
        enumerate_case(8)


def test_case6_bad_n_is_reported():
    rep = enumerate_case(6, n=9)
    assert not rep.passed and rep.claims[-1].id == "completed"


def test_case1_report():
    rep = enumerate_case(1)
    assert rep.passed, rep.failed_claims()
    assert rep.total == 240
    assert sorted(c["size"] for c in rep.classes) == [120, 120]


def test_case7_small_report():
    rep = enumerate_case(7, n=5)
    assert rep.passed, rep.failed_claims()
    assert rep.total == 120 and rep.case_id == "7:n=5"


def test_theorem_cases_small_range():
    checks = verify_theorem_cases((6, 7))
    labels = [c.label for c in checks]
    assert "Alt(7) = Alt(6) C7" in labels and "M23 = M22 C23" in labels
    assert all(c.passed for c in checks), [c.as_dict() for c in checks if not c.passed]


@pytest.mark.parametrize("n", [6, 8])
def test_pi_formula_exhaustive(n):
    holds, checked = verify_pi_formula(n)
    assert holds and checked == np.prod(range(1, n + 1)) // 2


def test_pi_formula_sampled_n10():
    pair = alternating_pair(10)
    rng = np.random.default_rng(11)
    for _ in range(300):
        b = pair.B.random_element(rng)
        _, j = factor_element(pair, pair.y * b)
        assert j == b.images[0] + 1


def test_case6_injectivity_exhaustive_n6():
    res = verify_case6_injectivity(6)
    assert res["mode"] == "exhaustive" and res["distinct"] == 720 and res["holds"]
    with pytest.raises(ValueError):
        verify_case6_injectivity(7)


def test_prop_index2_on_extensions():
    for ext in catalog.sym5_extension_candidates():
        res = verify_prop_index2(ext.G, ext.B, ext.A)
        assert res["holds"]
        assert res["centralizer_order"] == ext.C.order
        assert res["max_element_order_B"] == 6
    with pytest.raises(ValueError):
        S5 = catalog.symmetric(5)
        verify_prop_index2(S5, S5, S5.stabilizer(4))


def test_order_identity():
    S4 = catalog.symmetric(4)
    B = S4.stabilizer(3)
    C = PermGroup([cycle(4, 0, 1, 2, 3)], 4)
    A4 = catalog.alternating(4)
    n, bnc, bn = order_identity(B, C, A4)
    assert n == bnc * bn == 12


@pytest.mark.parametrize("p", [2, 3])
def test_example_sharp(p):
    res = verify_example_sharp(p)
    assert res["holds"]
    assert res["Z_order"] == p - 1 and res["B_over_A"] == p
    with pytest.raises(ValueError):
        verify_example_sharp(5)


def test_example_centralizer():
    res = verify_example_centralizer(5, cycle(5, 0, 1, 2))
    assert res["holds"] and res["m"] == 3 and res["centralizer_order"] == 3
    with pytest.raises(ValueError):
        verify_example_centralizer(5, cycle(5, 0, 1))
    with pytest.raises(ValueError):
        verify_example_centralizer(9, cycle(9, 0, 1, 2))


def test_example_wreath():
    res = verify_example_wreath()
    assert res["holds"] and res["degree"] == 20
    assert res["B_order"] * res["Y_order"] == res["G_order"]


def test_settings_defaults():
    s = Settings()
    assert s.seed == 0 and s.sample_size == 500 and s.axiom_samples == 10**6
