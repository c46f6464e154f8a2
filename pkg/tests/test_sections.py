import numpy as np
import pytest
import sympy

from kerbundles.bott import LineBundleSum
from kerbundles.exact import binom, rank_ffp
from kerbundles.sections import (GeneralMapSpec, MonomialBasis, generic_rank, monomials,
                                 mult_matrix, section_matrix)

P = 32003


def test_monomial_order_and_count():
    assert monomials(2, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    for n in range(1, 4):
        for d in range(5):
            assert len(monomials(n, d)) == binom(d + n, n)
    B = MonomialBasis(3, 2)
    assert len(B) == 10 and B.index(B[7]) == 7
    assert monomials(2, -1) == ()


def _poly(n, d, coeffs):
    xs = sympy.symbols(f"x0:{n + 1}")
    return sum(c * sympy.prod([x**e for x, e in zip(xs, m)]) for c, m in zip(coeffs, monomials(n, d))), xs


def test_mult_matrix_matches_polynomial_product():
    rng = np.random.default_rng(0)
    n, m, d = 2, 2, 3
    f = rng.integers(0, 50, binom(m + n, n))
    g = rng.integers(0, 50, binom(d + n, n))
    M = mult_matrix(n, f, d, p=10**9 + 7)
    fp, xs = _poly(n, m, f)
    gp, _ = _poly(n, d, g)
    prod = sympy.Poly(sympy.expand(fp * gp), *xs)
    expect = [prod.coeff_monomial(sympy.prod([x**e for x, e in zip(xs, mon)]))
              for mon in monomials(n, m + d)]
    assert (M @ g % (10**9 + 7)).tolist() == [int(c) for c in expect]


def test_mult_matrix_errors():
    with pytest.raises(ValueError):
        mult_matrix(2, [1, 2], 1)
    with pytest.raises(ValueError):
        mult_matrix(2, [1, 2, 3], -1)


def test_general_map_spec_validation():
    V = LineBundleSum.parse(2, "1^3")
    with pytest.raises(ValueError):
        GeneralMapSpec(V, V)
    with pytest.raises(ValueError):
        GeneralMapSpec(V, LineBundleSum.parse(3, "2"))
    with pytest.raises(ValueError):
        GeneralMapSpec(LineBundleSum(2, [(0, 3)]), V, prime=32001)
    GeneralMapSpec(V, V, waive_degree_check=True)


def test_example_shape_and_rank_both_backends():
    spec = GeneralMapSpec(LineBundleSum.parse(3, "2^4"), LineBundleSum.parse(3, "4^1"))
    sm = section_matrix(spec, 0)
    assert sm.shape == (35, 40)
    assert generic_rank(spec, 0).rank == 34
    assert generic_rank(spec, 0, backend="rational").rank == 34
    with pytest.raises(ValueError):
        generic_rank(spec, 0, backend="float")


def test_dropping_a_summand_keeps_other_blocks():
    V1 = LineBundleSum.parse(2, "0^3,1^2")
    V2 = LineBundleSum.parse(2, "2^2")
    spec = GeneralMapSpec(V1, V2, seed=9)
    full = section_matrix(spec, 1)
    small = section_matrix(spec.drop_source_degree(0), 1)
    cols = [g for g in full.col_groups if g[0][0] == 1]
    c0 = cols[0][1]
    assert np.array_equal(full.matrix[:, c0:], small.matrix)


def test_dual_spec_reuses_forms_transposed():
    spec = GeneralMapSpec(LineBundleSum.parse(2, "0^3"), LineBundleSum.parse(2, "1^2"), seed=4)
    dual = spec.dual()
    assert dual.source == LineBundleSum.parse(2, "-1^2")
    for tc in range(2):
        for sc in range(3):
            assert np.array_equal(spec.form((1, tc), (0, sc), 0), dual.form((0, sc), (-1, tc), 0))
    assert dual.dual() == spec


def test_rank_is_trial_max_and_lower_bound():
    spec = GeneralMapSpec(LineBundleSum.parse(2, "0^4"), LineBundleSum.parse(2, "1^2"), trials=3)
    rr = generic_rank(spec, 2)
    M = section_matrix(spec, 2, 0).matrix
    assert rr.rank >= rank_ffp(M, P)
    assert rr.rank == max(rr.trial_ranks)
    assert rr.nullity == rr.cols - rr.rank and rr.corank == rr.rows - rr.rank
