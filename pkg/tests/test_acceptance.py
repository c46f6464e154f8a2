"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The lines are repeated in the pytest terminal summary under "acceptance criteria".
"""
import time
from fractions import Fraction
from functools import lru_cache

from kerbundles.bott import LineBundleSum, TwistWindow, alpha_beta
from kerbundles.cli import run
from kerbundles.cohomology import cohomology_table, max_rank_check, natural_check
from kerbundles.ample import ample_criterion, line_splitting_sample
from kerbundles.kronecker import brute_force_sks, steiner_scale_bound
from kerbundles.macaulay import strict_growth_sweep
from kerbundles.rank_n import h0_h1_formula, two_group_detector
from kerbundles.sections import GeneralMapSpec
import kerbundles.stability as stability
from kerbundles.stability import Outcome, above_phi, classify, psi_test, rho_orbit

from props import (euler_violations, float_audit, monotonicity_violations, regularity_violations,
                   serre_violations)

SEEDS = (0, 1, 2)
COL_CAP = 2000  # criterion 2: largest section matrix built (columns)


@lru_cache(maxsize=None)
def criterion1_runs():
    out = []
    for seed in SEEDS:
        spec = GeneralMapSpec(LineBundleSum.parse(3, "2^4"), LineBundleSum.parse(3, "4^1"), seed=seed)
        t0 = time.perf_counter()
        table = cohomology_table("kernel", spec, TwistWindow(-2, 3))
        out.append((seed, table, time.perf_counter() - t0))
    return tuple(out)


def criterion2_window(n, t, m):
    V1 = LineBundleSum(n, [(0, t + n)])
    hi = m * t + (n - 1) * m + 1
    while hi > -n - 1 and V1.h(0, hi) > COL_CAP:
        hi -= 1
    return TwistWindow(-n - 1, hi)


@lru_cache(maxsize=None)
def criterion2_runs():
    out = []
    t0 = time.perf_counter()
    for n in (2, 3):
        for t in range(1, 6):
            for m in (1, 2, 3):
                spec = GeneralMapSpec(LineBundleSum(n, [(0, t + n)]), LineBundleSum(n, [(m, t)]))
                table = cohomology_table("kernel", spec, criterion2_window(n, t, m))
                out.append(((n, t, m), table))
    return tuple(out), time.perf_counter() - t0


@lru_cache(maxsize=None)
def criterion3_runs():
    out = []
    for seed in SEEDS:
        for r in (3, 6):
            for t in range(1, 7):
                alpha, _ = alpha_beta(3, r, t)
                out.append(((seed, r, t), natural_check(3, r, t, seed=seed, window=(-4, alpha + 2))))
    return tuple(out)


@lru_cache(maxsize=None)
def criterion4_runs():
    out = []
    for t in (2, 3):
        a = 2 * t
        spec = GeneralMapSpec(LineBundleSum(3, [(0, t + 3)]), LineBundleSum(3, [(2, t)]))
        out.append((t, a, cohomology_table("kernel", spec, TwistWindow(-4, a + 1))))
    return tuple(out)


def test_criterion_01_worked_example(report, capsys):
    rows = [(seed, table.row(0), dt) for seed, table, dt in criterion1_runs()]
    ok_rows = all(row == (6, 1, 0, 0) and dt < 1.0 for _, row, dt in rows)
    code = run(["cohomology", "--n", "3", "--source", "2^4", "--target", "4^1", "--format", "csv",
                "--window", "0..0"])
    cli_row = capsys.readouterr().out.splitlines()[1]
    spec = GeneralMapSpec(LineBundleSum.parse(3, "2^4"), LineBundleSum.parse(3, "4^1"))
    mr = max_rank_check(spec)
    ok = ok_rows and code == 0 and cli_row == "0,6,1,0,0" and mr == (False, 1)
    detail = "; ".join(f"seed {s}: {row} in {dt:.3f}s" for s, row, dt in rows) + f"; max_rank {mr}"
    assert report(1, "worked example (6,1,0,0), max rank (False, 1)", ok, detail)


def test_criterion_02_formula_matrix_agreement(report):
    runs, elapsed = criterion2_runs()
    compared, mismatches = 0, []
    for (n, t, m), table in runs:
        for a in table.window:
            f = h0_h1_formula(n, table.spec.source, table.spec.target, a)
            got = table.row(a)
            if f.applicable:
                compared += 1
                if f.h0 != got[0]:
                    mismatches.append((n, t, m, a, "h0", f.h0, got[0]))
            if f.h1_applicable:
                compared += 1
                if f.h1 != got[1]:
                    mismatches.append((n, t, m, a, "h1", f.h1, got[1]))
    ok = not mismatches and elapsed < 60 and compared > 0
    assert report(2, "rank-n formula equals matrix path", ok,
                  f"{len(runs)} cells, {compared} values compared, {len(mismatches)} mismatches, "
                  f"{elapsed:.1f}s"), mismatches[:5]


def test_criterion_03_naturality(report):
    runs = criterion3_runs()
    failures = [(key, v.failing_twists) for key, v in runs if not v.natural]
    assert report(3, "natural cohomology for n=3, r in {3,6}, t in 1..6", not failures,
                  f"{len(runs)} checks over seeds {SEEDS}, {len(failures)} failures"), failures


def test_criterion_04_two_group_cases(report):
    details, ok = [], True
    for t, a, table in criterion4_runs():
        h0, h1 = table.value(a, 0), table.value(a, 1)
        det = two_group_detector(3, 2, t, a)
        ok &= det and h0 > 0 and h1 > 0
        details.append(f"t={t} a={a}: detector {det}, h0={h0}, h1={h1}")
    assert report(4, "two-group twists at a = dt", ok, "; ".join(details))


def test_criterion_05_macaulay_sweep(report):
    t0 = time.perf_counter()
    bad = strict_growth_sweep(6, 12)
    dt = time.perf_counter() - t0
    assert report(5, "strict Macaulay growth, d <= 6, k <= 12", not bad and dt < 10,
                  f"{len(bad)} failures in {dt:.2f}s"), bad[:5]


def test_criterion_06_kronecker_brute_force(report):
    details, ok = [], True
    for p in (2, 3):
        res = brute_force_sks(2, 1, 1, p)
        ok &= bool(res.stable) and res.all_margins_positive and res.worst_margin > 0
        details.append(f"F_{p}: {res.subspaces_checked} subspaces, min margin {res.worst_margin}")
    assert report(6, "O(1) < O(2) on P^2 over F_2 and F_3", ok, "; ".join(details))


def test_criterion_07_stability_verdicts(report):
    a = classify(3, 5, 2).outcome
    b = classify(3, 6, 2).outcome
    scale_bad = [(n, r, t, lam) for n in range(2, 6) for r in range(n, 12) for t in range(1, 12)
                 for lam in range(2, 21)
                 if classify(n, lam * r, lam * t).outcome != classify(n, r, t).outcome
                 or psi_test(n, lam * r, lam * t) != psi_test(n, r, t)]
    audit = float_audit(stability)
    ok = a is Outcome.SLOPE_STABLE and b is Outcome.SEMI_EXCEPTIONAL_REGIME and not scale_bad and not audit
    assert report(7, "stability verdicts, scale invariance, no floats", ok,
                  f"(3,5,2) {a.value}; (3,6,2) {b.value}; {len(scale_bad)} scale mismatches; "
                  f"{len(audit)} float findings"), (scale_bad[:3], audit)


def test_criterion_08_rho_orbit(report):
    orbit = rho_orbit(2, 4)
    expect = [Fraction(0), Fraction(1, 2), Fraction(3, 5), Fraction(8, 13), Fraction(21, 34)]
    increasing = all(x < y for x, y in zip(orbit, orbit[1:]))
    below = not any(above_phi(2, x) for x in orbit)
    ok = orbit == expect and increasing and below
    assert report(8, "rho orbit for n=2", ok, ", ".join(map(str, orbit)))


def test_criterion_09_scale_bound(report):
    m1 = steiner_scale_bound(3, 3, 1)
    v1 = natural_check(3, 3 * m1, 1 * m1)
    m2 = steiner_scale_bound(2, 2, 2)
    v2 = natural_check(2, 2 * m2, 2 * m2)
    ok = m1 == 1 and v1.natural and m2 > 1 and v2.natural
    assert report(9, "scale bound is sufficient where checked", ok,
                  f"(3,3,1): m_min={m1}, natural={v1.natural}; (2,2,2): m_min={m2}, "
                  f"natural at m_min={v2.natural}")


def test_criterion_10_ampleness_sampler(report):
    verdict = ample_criterion(2, 2, 4).verdict
    sample = line_splitting_sample(2, 2, 4, seed=0, lines=100)
    ok = (len(sample.types) == 100 and sample.min_degree >= 1 and verdict == "GeneralAmple"
          and all(s.degree == 4 and s.rank == 2 for s in sample.types))
    assert report(10, "splitting types on 100 lines for (2,2,4)", ok,
                  f"{verdict}; types {sample.counts}; min part {sample.min_degree}")


def test_criterion_11_property_suites(report):
    tables = [("c1", s, tb) for s, tb, _ in criterion1_runs()]
    tables += [("c2", key, tb) for key, tb in criterion2_runs()[0]]
    tables += [("c3", key, v.table) for key, v in criterion3_runs()]
    tables += [("c4", t, tb) for t, _, tb in criterion4_runs()]
    counts = {"euler": 0, "serre": 0, "monotone": 0, "regularity": 0}
    bad = []
    for tag, key, tb in tables:
        for name, fn in (("euler", euler_violations), ("monotone", monotonicity_violations),
                         ("regularity", regularity_violations), ("serre", serre_violations)):
            v = fn(tb)
            counts[name] += len(v)
            if v:
                bad.append((tag, key, name, v[:2]))
    ok = not bad
    assert report(11, "Euler, Serre round trip, h0 monotone, h1 regularity", ok,
                  f"{len(tables)} tables; violations {counts}"), bad[:5]
