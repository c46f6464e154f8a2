"""Slope stability of general Steiner bundles 0 -> O(-1)^t -> O^{r+t} -> V -> 0.

The thresholds involve sqrt(n^2 + 2n - 3):

    psi_n = (n - 1 + sqrt(n^2+2n-3)) / 2,     phi_n = 1 / psi_n,
    rho_n(x) = 1 / (n - 1 + 1/(1+x)) = (1+x) / ((n-1)(1+x) + 1),

and every comparison below is decided by squaring after a sign check, so only
integers and Fractions are ever touched.  Keep it that way: the test suite
audits this file for float literals, true division and math imports.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class Outcome(str, enum.Enum):
    SLOPE_STABLE = "SlopeStable"
    SLOPE_SEMISTABLE_ONLY = "SlopeSemistableOnly"
    SEMI_EXCEPTIONAL_REGIME = "SemiExceptionalRegime"
    RANK_TOO_SMALL = "RankTooSmall"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class SteinerCharacter:
    n: int
    r: int
    t: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.r < 1 or self.t < 1:
            raise ValueError("need r >= 1 and t >= 1")

    @property
    def mu(self) -> Fraction:
        """Slope deg/rank = t/r."""
        return Fraction(self.t, self.r)

    @property
    def ratio(self) -> Fraction:
        """r/t, the quantity compared with psi_n."""
        return Fraction(self.r, self.t)


@dataclass(frozen=True)
class StabilityVerdict:
    outcome: Outcome
    witness: str
    character: SteinerCharacter
    info: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"outcome": self.outcome.value, "witness": self.witness,
                "n": self.character.n, "r": self.character.r, "t": self.character.t,
                **self.info}


def _psi_sides(n: int, r: int, t: int) -> tuple[int, int, int]:
    lhs = 2 * r - (n - 1) * t
    return lhs, lhs * lhs, (n * n + 2 * n - 3) * t * t


def psi_test(n: int, r: int, t: int) -> bool:
    """r/t < psi_n, decided in integers."""
    if n < 2 or r < 1 or t < 1:
        raise ValueError("need n >= 2, r >= 1, t >= 1")
    lhs, sq, bound = _psi_sides(n, r, t)
    return lhs < 0 or sq < bound


def _psi_witness(n: int, r: int, t: int) -> str:
    lhs, sq, bound = _psi_sides(n, r, t)
    if lhs < 0:
        return f"2r-(n-1)t = {lhs} < 0"
    rel = "<" if sq < bound else ">="
    return f"(2r-(n-1)t)^2 = {sq} {rel} (n^2+2n-3)t^2 = {bound}"


def classify(ch: SteinerCharacter | int, r: int | None = None, t: int | None = None) -> StabilityVerdict:
    """Verdict for a general Steiner bundle; ``classify(n, r, t)`` also works."""
    if not isinstance(ch, SteinerCharacter):
        ch = SteinerCharacter(ch, r, t)
    n, r, t = ch.n, ch.r, ch.t
    if r < n:
        return StabilityVerdict(Outcome.RANK_TOO_SMALL, f"r = {r} < n = {n}", ch)
    if psi_test(n, r, t):
        return StabilityVerdict(Outcome.SLOPE_STABLE, f"n <= r and {_psi_witness(n, r, t)}", ch)
    return StabilityVerdict(
        Outcome.SEMI_EXCEPTIONAL_REGIME, _psi_witness(n, r, t), ch,
        {"note": "r/t exceeds psi_n; here stability is settled by the classification of "
                 "semi-exceptional Steiner bundles (stable iff rank and degree are coprime), "
                 "which is reported, not computed",
         "gcd_rank_degree": gcd(r, t)},
    )


def rho(n: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return (1 + x) * Fraction(1, (n - 1) * (1 + x) + 1)


def rho_orbit(n: int, steps: int) -> list[Fraction]:
    """[rho^0(0), rho^1(0), ..., rho^steps(0)]."""
    if n < 2:
        raise ValueError("need n >= 2")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    out = [Fraction(0)]
    for _ in range(steps):
        out.append(rho(n, out[-1]))
    return out


def above_phi(n: int, mu: Fraction) -> bool:
    """mu > phi_n for mu >= 0: (2(n-1)mu + n-1)^2 > n^2+2n-3, the base being positive."""
    mu = Fraction(mu)
    if mu < 0:
        raise ValueError("need mu >= 0")
    base = 2 * (n - 1) * mu + (n - 1)
    return base * base > n * n + 2 * n - 3


def phi_membership(n: int, mu: Fraction) -> bool:
    """mu in Phi_n = {mu > phi_n} union {rho_n^i(0)}."""
    if n < 2:
        raise ValueError("need n >= 2")
    mu = Fraction(mu)
    if above_phi(n, mu):
        return True
    # The orbit increases strictly toward phi_n and mu < phi_n, so it passes mu.
    x = Fraction(0)
    while x < mu:
        x = rho(n, x)
    return x == mu


@dataclass(frozen=True)
class QuadricCharacter:
    mu: Fraction
    delta: Fraction
    abe_applicable: bool
    witness: str


def quadric_character(r: int, t: int) -> QuadricCharacter:
    """mu = t/r, Delta = mu^2 + mu, and whether mu > 1/(1+sqrt 3), i.e. r < (1+sqrt 3)t."""
    if r < 1 or t < 1:
        raise ValueError("need r >= 1 and t >= 1")
    mu = Fraction(t, r)
    diff = r - t
    ok = diff < 0 or diff * diff < 3 * t * t
    witness = (f"r-t = {diff} < 0" if diff < 0
               else f"(r-t)^2 = {diff * diff} {'<' if ok else '>='} 3t^2 = {3 * t * t}")
    return QuadricCharacter(mu, mu * mu + mu, ok, witness)


def semistable_degree_d(n: int, r: int, t: int, d: int) -> StabilityVerdict:
    """Kernel-type character built from degree-d forms; d = 1 is :func:`classify`."""
    if d < 1:
        raise ValueError("need d >= 1")
    ch = SteinerCharacter(n, r, t)
    if d == 1:
        return classify(ch)
    if r >= n and psi_test(n, r, t):
        return StabilityVerdict(Outcome.SLOPE_SEMISTABLE_ONLY,
                                f"pullback of the degree-1 window: {_psi_witness(n, r, t)}", ch,
                                {"d": d})
    reason = f"r = {r} < n = {n}" if r < n else _psi_witness(n, r, t)
    return StabilityVerdict(Outcome.UNCLASSIFIED, reason, ch, {"d": d})
