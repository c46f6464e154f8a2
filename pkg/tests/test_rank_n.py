from fractions import Fraction

import pytest

from kerbundles.bott import LineBundleSum
from kerbundles.cohomology import cohomology_table
from kerbundles.rank_n import (chi_resolution, h0_h1_formula, rank_resolution, resolution_terms,
                               two_group_detector, vanishing_ranges)
from kerbundles.sections import GeneralMapSpec


def L(n, s):
    return LineBundleSum.parse(n, s)


def test_resolution_examples():
    terms = resolution_terms(3, L(3, "2^4"), L(3, "4^1"))
    assert [str(u.bundle) for u in terms] == ["0^6", "-2^4", "-4^1"]
    terms = resolution_terms(3, L(3, "0^4"), L(3, "1^1"))
    assert [u.bundle.summands for u in terms] == [((-1, 6),), ((-2, 4),), ((-3, 1),)]
    with pytest.raises(ValueError):
        resolution_terms(3, L(3, "0^3"), L(3, "1^1"))
    with pytest.raises(ValueError):
        resolution_terms(3, L(3, "0^3,1^1"), L(3, "2^0"))


def test_formula_examples():
    f = h0_h1_formula(3, L(3, "2^4"), L(3, "4^1"))
    assert (f.h0, f.h1) == (6, 1) and f.applicable and f.h1_applicable
    f = h0_h1_formula(3, L(3, "0^4"), L(3, "1^1"))
    assert (f.h0, f.h1) == (0, 0)
    for t in range(1, 7):
        f = h0_h1_formula(2, L(2, f"0^{t + 2}"), L(2, f"1^{t}"), t - 1)
        assert (f.h0, f.h1) == (0, 0)


def test_formula_reports_h1_inapplicable():
    # pure line-bundle terms only meet middle cohomology in the h0 hypothesis,
    # so h0 is always available; h1 needs V1(a), V2(a) free of top cohomology
    for a in range(-12, 3):
        f = h0_h1_formula(3, L(3, "0^5"), L(3, "2^2"), a)
        assert f.applicable and f.h0 is not None
        if a <= -4:
            assert not f.h1_applicable and f.h1 is None and "H^j" in f.reason
        else:
            assert f.h1_applicable and f.reason == ""


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("m", [1, 2])
def test_resolution_euler_checks(n, m):
    for t in range(1, 5):
        V1, V2 = L(n, f"0^{t + n}"), L(n, f"{m}^{t}")
        for a in range(-n - 2, 4):
            terms = resolution_terms(n, V1, V2, a)
            assert rank_resolution(terms) == n
            assert chi_resolution(terms) == V1.chi(a) - V2.chi(a)


def test_formula_matches_matrix_small_grid():
    for n in (2, 3):
        for t in (1, 2, 3):
            for m in (1, 2):
                spec = GeneralMapSpec(L(n, f"0^{t + n}"), L(n, f"{m}^{t}"), seed=t)
                table = cohomology_table("kernel", spec, range(-n - 1, m * t + 2))
                for a in table.window:
                    f = h0_h1_formula(n, spec.source, spec.target, a)
                    if f.applicable:
                        assert f.h0 == table.value(a, 0), (n, t, m, a)
                    if f.h1_applicable:
                        assert f.h1 == table.value(a, 1), (n, t, m, a)


def test_detector_examples():
    assert two_group_detector(3, 2, 2, 4)
    assert not any(two_group_detector(2, 2, t, 2 * t) for t in range(1, 10))
    assert not any(two_group_detector(n, 1, t, a) for n in range(2, 6)
                   for t in range(1, 6) for a in range(-10, 20))
    with pytest.raises(ValueError):
        two_group_detector(3, 0, 1, 0)


@pytest.mark.parametrize("t", [2, 3])
def test_detector_confirmed_by_matrix(t):
    a = 2 * t
    assert two_group_detector(3, 2, t, a)
    spec = GeneralMapSpec(L(3, f"0^{t + 3}"), L(3, f"2^{t}"))
    row = cohomology_table("kernel", spec, [a]).row(a)
    assert row[0] > 0 and row[1] > 0


def test_vanishing_ranges_examples():
    v = vanishing_ranges(3, 4, 7)
    assert v.h0_vanish_max == Fraction(5, 2) and v.h1_vanish_min == 6
    assert v.h0_vanishes(2) and not v.h0_vanishes(3)
    assert vanishing_ranges(3, 3, 5).h1_vanish_min == 4
    assert vanishing_ranges(3, 6, 4).h0_vanish_max == Fraction(4, 3) - 1
    with pytest.raises(ValueError):
        vanishing_ranges(3, 2, 1)


@pytest.mark.parametrize("r,t", [(3, 4), (4, 5), (6, 4), (5, 3)])
def test_vanishing_ranges_against_matrix(r, t):
    v = vanishing_ranges(3, r, t)
    spec = GeneralMapSpec(L(3, f"0^{r + t}"), L(3, f"1^{t}"))
    table = cohomology_table("kernel", spec, range(-1, t + 1))
    for a in table.window:
        if v.h0_vanishes(a):
            assert table.value(a, 0) == 0
        if v.h1_vanishes(a):
            assert table.value(a, 1) == 0
