"""Line bundles on P^n: closed-form cohomology, Euler characteristics, formal sums."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .exact import binom


def h_line(n: int, d: int, i: int) -> int:
    """h^i(P^n, O(d))."""
    if not 0 <= i <= n:
        raise ValueError(f"cohomological index {i} outside [0, {n}]")
    if i == 0:
        return binom(d + n, n) if d >= 0 else 0
    if i == n:
        return binom(-d - 1, n) if d <= -n - 1 else 0
    return 0


def chi_line(n: int, d: int) -> int:
    return sum((-1) ** i * h_line(n, d, i) for i in range(n + 1))


@dataclass(frozen=True)
class TwistWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty twist window [{self.lo}, {self.hi}]")

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return self.hi - self.lo + 1

    @classmethod
    def parse(cls, text: str) -> "TwistWindow":
        m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
        if not m:
            raise ValueError(f"bad twist window {text!r}; expected LO..HI")
        return cls(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class LineBundleSum:
    """Formal direct sum of line bundles O(d)^s on P^n.

    Summands are merged by degree and kept sorted ascending, so two sums are
    equal exactly when they describe the same bundle.  A sum with no summands
    is allowed (the zero bundle) and is what an empty target looks like.
    """

    n: int
    summands: tuple[tuple[int, int], ...]

    def __init__(self, n: int, summands: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        merged: dict[int, int] = {}
        for d, s in summands:
            if s < 1:
                raise ValueError(f"multiplicity {s} of O({d}) must be >= 1")
            merged[int(d)] = merged.get(int(d), 0) + int(s)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "summands", tuple(sorted(merged.items())))

    @classmethod
    def parse(cls, n: int, text: str) -> "LineBundleSum":
        """Parse ``"d^s,d^s,..."``; a bare ``d`` means multiplicity 1."""
        text = text.strip()
        if not text:
            return cls(n, ())
        items = []
        for tok in text.split(","):
            m = re.fullmatch(r"\s*(-?\d+)\s*(?:\^\s*(\d+))?\s*", tok)
            if not m:
                raise ValueError(f"bad summand {tok!r}; expected d^s")
            items.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls(n, items)

    def __str__(self):
        return ",".join(f"{d}^{s}" for d, s in self.summands)

    @property
    def rank(self) -> int:
        return sum(s for _, s in self.summands)

    @property
    def degree(self) -> int:
        """First Chern class (sum of degrees with multiplicity)."""
        return sum(d * s for d, s in self.summands)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.summands)

    def copies(self) -> list[tuple[int, int]]:
        """Expanded summand list as (degree, copy index within that degree)."""
        return [(d, c) for d, s in self.summands for c in range(s)]

    def twist(self, a: int) -> "LineBundleSum":
        return LineBundleSum(self.n, ((d + a, s) for d, s in self.summands))

    def dual(self) -> "LineBundleSum":
        return LineBundleSum(self.n, ((-d, s) for d, s in self.summands))

    def without_degree(self, d: int) -> "LineBundleSum":
        return LineBundleSum(self.n, ((e, s) for e, s in self.summands if e != d))

    def h(self, i: int, a: int = 0) -> int:
        return sum(s * h_line(self.n, d + a, i) for d, s in self.summands)

    def chi(self, a: int = 0) -> int:
        return chi_sum(self, a)


def chi_sum(V: LineBundleSum, a: int = 0) -> int:
    """Euler characteristic of V(a)."""
    return sum(s * chi_line(V.n, d + a) for d, s in V.summands)


def alpha_beta(n: int, r: int, t: int) -> tuple[int, int]:
    """(ceil(tn/r), floor(tn/r)), the two Steiner test twists plus one."""
    if r < 1 or t < 0:
        raise ValueError("need r >= 1 and t >= 0")
    return -((-t * n) // r), (t * n) // r
