"""Macaulay representations and the growth bound on Hilbert functions.

Every c >= 1 has a unique expansion in degree d,

    c = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_delta, delta),
    k_d > k_{d-1} > ... > k_delta >= delta >= 1,

found greedily from the top, and c^<d> = sum C(k_j + 1, j + 1) bounds the
codimension of U * H^0(O(1)) in degree d+1 when U has codimension c in degree d.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import binom


@dataclass(frozen=True)
class MacaulayRep:
    c: int
    d: int
    terms: tuple[tuple[int, int], ...]  # (k_j, j), j descending

    def value(self) -> int:
        return sum(binom(k, j) for k, j in self.terms)

    def __str__(self):
        return " + ".join(f"C({k},{j})" for k, j in self.terms)


def _check_cd(c: int, d: int) -> None:
    if c < 1 or d < 1:
        raise ValueError(f"need c >= 1 and d >= 1, got c={c}, d={d}")


def _largest_k(rem: int, j: int) -> int:
    """Largest k with C(k, j) <= rem (k >= j since C(j, j) = 1 <= rem)."""
    lo, step = j, 1
    while binom(lo + step, j) <= rem:
        lo += step
        step *= 2
    hi = lo + step  # C(hi, j) > rem >= C(lo, j)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if binom(mid, j) <= rem:
            lo = mid
        else:
            hi = mid
    return lo


def macaulay_rep(c: int, d: int) -> MacaulayRep:
    _check_cd(c, d)
    terms = []
    rem, j = c, d
    while rem > 0:
        k = _largest_k(rem, j)
        terms.append((k, j))
        rem -= binom(k, j)
        j -= 1
    return MacaulayRep(c, d, tuple(terms))


def growth(c: int, d: int) -> int:
    """c^<d>."""
    return sum(binom(k + 1, j + 1) for k, j in macaulay_rep(c, d).terms)


def growth_chain(c: int, i: int, j: int) -> int:
    """((c^<i>)^<i+1>)...^<i+j-1>; j = 0 gives c back."""
    if j < 0:
        raise ValueError("steps must be nonnegative")
    _check_cd(c, i)
    for step in range(j):
        c = growth(c, i + step)
    return c


def strict_growth_holds(c: int, d: int, k: int) -> bool:
    """Exact test of c^<d> < (k+1)/(d+1) * c, for k >= d >= 1 and 1 <= c < C(k, d)."""
    if not (k >= d >= 1):
        raise ValueError(f"need k >= d >= 1, got k={k}, d={d}")
    if not (1 <= c < binom(k, d)):
        raise ValueError(f"need 1 <= c < C({k},{d}) = {binom(k, d)}, got c={c}")
    return Fraction(growth(c, d)) < Fraction(k + 1, d + 1) * c


def strict_growth_sweep(d_max: int = 6, k_max: int = 12) -> list[tuple[int, int, int]]:
    """Every (c, d, k) in range where the strict inequality fails."""
    bad = []
    for d in range(1, d_max + 1):
        for k in range(d, k_max + 1):
            for c in range(1, binom(k, d)):
                if not strict_growth_holds(c, d, k):
                    bad.append((c, d, k))
    return bad
