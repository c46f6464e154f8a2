"""Closed-form cohomology of rank-n kernel bundles on P^n.

A rank-n bundle V = ker(V1 -> V2) has the Koszul-type resolution

    0 -> U_{n-1} -> ... -> U_0 -> V -> 0,
    U_i = Sym^i(V2^*) (x) Lambda^{n-i-1}(V1^*) (x) O(deg V1 - deg V2),

and when every U_i is a line-bundle sum the long exact sequences collapse to
signed sums of line-bundle cohomology.  Only pure V1 = O(c)^s, V2 = O(e)^t are
expanded here, where

    U_i = O(-i*e - (n-i-1)*c + s*c - t*e) ^ (C(t+i-1, i) * C(s, n-i-1)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bott import LineBundleSum
from .exact import binom


@dataclass(frozen=True)
class ResolutionTerm:
    index: int
    bundle: LineBundleSum
    d: int

    def h(self, j: int) -> int:
        return self.bundle.h(j)

    @property
    def rank(self) -> int:
        return self.bundle.rank


def _pure(V: LineBundleSum, name: str, allow_empty: bool = False) -> tuple[int | None, int]:
    if not V.summands:
        if allow_empty:
            return None, 0
        raise ValueError(f"{name} is empty")
    if len(V.summands) != 1:
        raise ValueError(f"{name} = {V} is not a single-degree sum; mixed sums are not expanded")
    return V.summands[0]


def resolution_terms(n: int, V1: LineBundleSum, V2: LineBundleSum, a: int = 0) -> list[ResolutionTerm]:
    """U_0, ..., U_{n-1} for the kernel of V1(a) -> V2(a)."""
    if V1.rank - V2.rank != n:
        raise ValueError(f"rank gap {V1.rank - V2.rank} != n = {n}; the bundle is not rank n")
    c, s = _pure(V1, "V1")
    e, t = _pure(V2, "V2", allow_empty=True)
    c += a
    e = (e + a) if e is not None else 0
    d = s * c - t * e
    terms = []
    for i in range(n):
        mult = (1 if i == 0 else binom(t + i - 1, i)) * binom(s, n - i - 1)
        deg = -i * e - (n - i - 1) * c + d
        bundle = LineBundleSum(n, [(deg, mult)] if mult else [])
        terms.append(ResolutionTerm(i, bundle, d))
    return terms


@dataclass(frozen=True)
class FormulaResult:
    h0: int | None
    h1: int | None
    applicable: bool
    h1_applicable: bool
    reason: str = ""
    terms: tuple[ResolutionTerm, ...] = field(default=(), repr=False)


def h0_h1_formula(n: int, V1: LineBundleSum, V2: LineBundleSum, a: int = 0) -> FormulaResult:
    """h^0 and h^1 of ker(V1(a) -> V2(a)) from the resolution, when its hypotheses hold.

    The h^0 sum needs H^{i+1}(U_i) = 0 for i <= n-2; the h^1 sum also needs
    V1(a) and V2(a) to have no higher cohomology.  A failed hypothesis yields
    ``None`` with the reason instead of a number.
    """
    terms = resolution_terms(n, V1, V2, a)
    bad = [U.index for U in terms[: n - 1] if U.h(U.index + 1) != 0]
    if bad:
        return FormulaResult(None, None, False, False,
                             f"H^(i+1)(U_i) != 0 for i in {bad}", tuple(terms))
    h0 = sum((-1) ** (i + j) * terms[i].h(j) for i in range(n) for j in range(i + 1))
    higher = [j for j in range(1, n + 1) if V1.h(j, a) or V2.h(j, a)]
    if higher:
        return FormulaResult(h0, None, True, False,
                             f"V1 or V2 has nonzero H^j for j in {higher}", tuple(terms))
    h1 = sum((-1) ** (i + j + 1) * terms[i].h(j) for i in range(n) for j in range(i + 1, n + 1))
    return FormulaResult(h0, h1, True, True, "", tuple(terms))


def two_group_detector(n: int, d: int, t: int, a: int) -> bool:
    """Whether ker(O^{t+n} -> O(d)^t), twisted by a, has both H^0 and H^1 nonzero.

    This is the sufficient condition a - dt >= 0 and a - dt - (n-1)d <= -n-1,
    which puts U_0 in the H^0 regime and U_{n-1} in the H^n regime.
    """
    if d < 1 or t < 1:
        raise ValueError("need d >= 1 and t >= 1")
    return a - d * t >= 0 and a - d * t - (n - 1) * d <= -n - 1


@dataclass(frozen=True)
class VanishingRanges:
    h0_vanish_max: Fraction
    h1_vanish_min: Fraction
    k: int
    rules: dict

    def h0_vanishes(self, d: int) -> bool:
        return d <= self.h0_vanish_max

    def h1_vanishes(self, d: int) -> bool:
        return d >= self.h1_vanish_min


def vanishing_ranges(n: int, r: int, t: int) -> VanishingRanges:
    """Twists where H^0 resp. H^1 of ker(O^{r+t} -> O(1)^t) are known to vanish.

    With k = floor(r/n): H^0(V(d)) = 0 for d <= t/(k+1) - 1 and H^1(V(d)) = 0 for
    d >= t/k - 1.  For n <= r < 2n the homological-dimension argument gives
    H^1(V(d)) = 0 for d >= t-1, recorded separately; it coincides with k = 1.
    """
    if r < n:
        raise ValueError(f"r = {r} < n = {n}: not a bundle")
    k = r // n
    h0_max = Fraction(t, k + 1) - 1
    h1_min = Fraction(t, k) - 1
    rules = {
        "h0": f"d <= t/(k+1) - 1 with k = floor(r/n) = {k}",
        "h1": f"d >= t/k - 1 with k = floor(r/n) = {k}",
    }
    if r < 2 * n:
        hd = Fraction(t - 1)
        rules["h1_homological_dimension"] = "d >= t - 1 (n <= r < 2n)"
        h1_min = min(h1_min, hd)
    return VanishingRanges(h0_max, h1_min, k, rules)


def chi_resolution(terms: list[ResolutionTerm]) -> int:
    return sum((-1) ** U.index * U.bundle.chi() for U in terms)


def rank_resolution(terms: list[ResolutionTerm]) -> int:
    return sum((-1) ** U.index * U.rank for U in terms)

