"""Ampleness of Steiner bundles V = coker(O(-d)^t -> O^{r+t}) on P^n.

A globally generated bundle is ample iff it is ample on every line, so the
sampler restricts a general presentation to random lines and reads off the
splitting type V|_l = sum O(a_k) from the section counts

    p(m) = h^0(V|_l(m)) = sum_k max(a_k + m + 1, 0),

whose first difference p(m) - p(m-1) counts the parts a_k >= -m.  On P^1 the
counts come from the dual form O^{r+t} -> O(d)^t: with D_b its section matrix
at twist b, h^1(V|_l(m)) = nullity(D_{-m-2}), and h^0 = chi + h^1.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .bott import LineBundleSum
from .exact import DEFAULT_PRIME, SplitMix64, check_prime, child_seed, rank_ffp
from .sections import GeneralMapSpec, assemble, monomials


@dataclass(frozen=True)
class AmpleVerdict:
    verdict: str  # "GeneralAmple" | "Inconclusive"
    codimension: int
    witness: str

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "codimension": self.codimension, "witness": self.witness}


def ample_criterion(n: int, r: int, t: int, d: int = 1) -> AmpleVerdict:
    """GeneralAmple iff t - r > 2n - 3, for every degree d >= 1."""
    if r < n or t < 1 or d < 1:
        raise ValueError("need r >= n, t >= 1, d >= 1")
    codim = t - r - 2 * n + 3
    if codim > 0:
        return AmpleVerdict("GeneralAmple", codim, f"t-r = {t - r} > 2n-3 = {2 * n - 3}")
    return AmpleVerdict("Inconclusive", codim, f"t-r = {t - r} <= 2n-3 = {2 * n - 3}")


@dataclass(frozen=True)
class SplittingType:
    parts: tuple[int, ...]  # descending

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def min_part(self) -> int:
        return min(self.parts) if self.parts else 0

    def is_ample(self) -> bool:
        return self.min_part >= 1

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass
class SplittingSample:
    types: list
    lines: list = field(default_factory=list)
    profiles: list = field(default_factory=list)

    @property
    def min_degree(self) -> int:
        return min(s.min_part for s in self.types)

    @property
    def counts(self) -> dict:
        return dict(Counter(str(s) for s in self.types))

    def summary(self) -> str:
        bad = [k for k, s in enumerate(self.types) if not s.is_ample()]
        if bad:
            return f"non-ample witness on sampled line {bad[0]}: {self.types[bad[0]]}"
        return (f"no non-ample witness found among {len(self.types)} lines "
                "(this does not certify ampleness)")

    def to_dict(self) -> dict:
        return {"lines": len(self.types), "min_degree": self.min_degree,
                "types": self.counts, "summary": self.summary()}


def _restriction_matrix(n: int, d: int, lam, mu, p: int) -> np.ndarray:
    """Columns: each degree-d monomial on P^n pulled back along x_i = lam_i s + mu_i u."""
    mons = monomials(n, d)
    R = np.zeros((d + 1, len(mons)), dtype=np.int64)
    lin = [np.array([lam[i], mu[i]], dtype=np.int64) for i in range(n + 1)]
    for k, e in enumerate(mons):
        poly = np.array([1], dtype=np.int64)
        for i, ei in enumerate(e):
            for _ in range(ei):
                poly = np.convolve(poly, lin[i]) % p
        R[:, k] = poly
    return R


def random_line(n: int, seed: int, p: int) -> tuple[list[int], list[int]]:
    """Two points spanning a line; dependent draws are redrawn."""
    gen = SplitMix64(seed)
    while True:
        lam = gen.field_elements(n + 1, p)
        mu = gen.field_elements(n + 1, p)
        if rank_ffp(np.array([lam, mu], dtype=np.int64), p) == 2:
            return lam, mu


def section_profile(n: int, r: int, t: int, d: int, spec: GeneralMapSpec, lam, mu) -> dict[int, int]:
    """m -> h^0(V|_l(m)) from m = -1 down to the first m with no sections."""
    p = spec.prime
    R = _restriction_matrix(n, d, lam, mu, p)
    src1, tgt1 = LineBundleSum(1, [(0, r + t)]), LineBundleSum(1, [(d, t)])

    def forms(tcopy, scopy):
        f = spec.form(tcopy, scopy, 0)
        return None if f is None else R @ f % p

    prof = {}
    m = -1
    while True:
        b = -m - 2
        chi = r * (m + 1) + d * t
        if b < 0:
            prof[m] = chi
        else:
            D = assemble(1, src1, tgt1, forms, b, p).matrix
            prof[m] = chi + D.shape[1] - rank_ffp(D, p)
        if prof[m] == 0:
            return prof
        if m < -(d * t) * max(r, 1) - 2:
            raise AssertionError("section profile did not reach zero")
        m -= 1


def splitting_from_profile(prof: dict[int, int], r: int) -> SplittingType:
    lo = min(prof)
    # extend with the linear regime: p(m) = r(m+1) + deg for m >= -1
    deg = prof[-1]
    full = dict(prof)
    for m in range(0, 2):
        full[m] = r * (m + 1) + deg
    diff = {m: full[m] - full[m - 1] for m in range(lo + 1, 2)}
    ms = sorted(diff)
    for a, b in zip(ms, ms[1:]):
        if diff[b] < diff[a]:
            raise AssertionError("section profile is not convex")
    if diff[1] != r:
        raise AssertionError("section profile does not reach slope r")
    parts = []
    for m in ms:
        # parts equal to j = -m: #{a >= -m} - #{a >= -m+1}
        prev = diff.get(m - 1, 0)
        parts += [-m] * (diff[m] - prev)
    return SplittingType(tuple(parts))


def line_splitting_sample(n: int, r: int, t: int, seed: int = 0, lines: int = 100,
                          p: int = DEFAULT_PRIME, d: int = 1) -> SplittingSample:
    """Splitting types of a general V on ``lines`` random lines."""
    p = check_prime(p)
    if n < 1 or r < 1 or t < 0 or d < 1 or lines < 0:
        raise ValueError("need n >= 1, r >= 1, t >= 0, d >= 1, lines >= 0")
    sample = SplittingSample([])
    if t == 0:
        sample.types = [SplittingType((0,) * r) for _ in range(lines)]
        return sample
    spec = GeneralMapSpec(LineBundleSum(n, [(0, r + t)]), LineBundleSum(n, [(d, t)]),
                          seed=seed, prime=p, trials=1)
    for k in range(lines):
        lam, mu = random_line(n, child_seed(seed, 1, k), p)
        prof = section_profile(n, r, t, d, spec, lam, mu)
        st = splitting_from_profile(prof, r)
        if st.degree != d * t or st.rank != r:
            raise AssertionError(f"splitting {st} has wrong degree or rank")
        sample.types.append(st)
        sample.lines.append((tuple(lam), tuple(mu)))
        sample.profiles.append(prof)
    return sample
