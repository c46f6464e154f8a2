"""Strongly Kronecker stable pairs: a subspace oracle, section-count bounds, mutations.

E < F means: H^0(F) != 0, evaluation H^0(E) (x) Hom(E, F) -> H^0(F) is onto,
and every proper nonzero U in H^0(E) satisfies

    dim(U . Hom(E, F)) / h^0(F)  >  dim U / h^0(E).

For line bundles O(i) < O(i+j) the image of U is U times the degree-j forms.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

import numpy as np

from ._validation import BudgetExceeded
from .bott import alpha_beta
from .exact import binom, check_prime, rank_ffp
from .sections import monomials, mult_matrix

log = logging.getLogger(__name__)

FP_CAVEAT = ("only F_p-rational subspaces were enumerated; this can falsify "
             "stability but does not prove it over an algebraically closed field")


@dataclass(frozen=True)
class SheafInvariants:
    rank: int
    h0: int
    label: str = ""
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if self.h0 < 0:
            raise ValueError("h0 must be nonnegative")


@dataclass(frozen=True)
class PairData:
    left: SheafInvariants
    right: SheafInvariants
    hom_dim: int

    def __post_init__(self):
        if self.hom_dim < 0:
            raise ValueError("hom_dim must be nonnegative")


def line_bundle(n: int, d: int) -> SheafInvariants:
    return SheafInvariants(1, binom(d + n, n), f"O({d})")


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def gaussian_binomial(h: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^h."""
    if k < 0 or k > h:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (h - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(h: int, q: int) -> int:
    """Proper nonzero subspaces of F_q^h."""
    return sum(gaussian_binomial(h, k, q) for k in range(1, h))


def rref_subspaces(h: int, k: int, q: int):
    """Yield every k-dim subspace of F_q^h once, as its reduced row echelon basis."""
    for pivots in itertools.combinations(range(h), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, h) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            B = np.zeros((k, h), dtype=np.int64)
            for r, c in enumerate(pivots):
                B[r, c] = 1
            for (r, c), v in zip(free, vals):
                B[r, c] = v
            yield B


def multiplication_image_dim(n: int, i: int, j: int, basis: np.ndarray, p: int) -> int:
    """dim of U * H^0(O(j)) in H^0(O(i+j)), U spanned by the rows of ``basis``."""
    blocks = []
    for k in range(len(monomials(n, j))):
        e = np.zeros(binom(j + n, n), dtype=np.int64)
        e[k] = 1
        blocks.append(mult_matrix(n, e, i, p, m=j) @ basis.T)
    return rank_ffp(np.concatenate(blocks, axis=1) % p, p)


@dataclass
class SKSResult:
    stable: bool | None
    applicable: bool
    surjective: bool
    worst_subspace: tuple = ()
    worst_margin: Fraction | None = None
    min_margin_by_dim: dict = field(default_factory=dict)
    subspaces_checked: int = 0
    all_margins_positive: bool = False
    field: int = 2
    caveat: str = FP_CAVEAT

    def to_dict(self) -> dict:
        return {
            "stable": self.stable, "applicable": self.applicable, "surjective": self.surjective,
            "worst_subspace": [list(map(int, row)) for row in self.worst_subspace],
            "worst_margin": str(self.worst_margin) if self.worst_margin is not None else None,
            "min_margin_by_dim": {str(k): str(v) for k, v in self.min_margin_by_dim.items()},
            "subspaces_checked": self.subspaces_checked,
            "all_margins_positive": self.all_margins_positive,
            "field": self.field, "caveat": self.caveat,
        }


def brute_force_sks(n: int, i: int, j: int, p: int = 2, budget: int = 10**6) -> SKSResult:
    """Check O(i) < O(i+j) on P^n against every proper nonzero F_p-subspace of H^0(O(i))."""
    p = check_prime(p)
    if j < 1:
        raise ValueError("need j >= 1")
    hE, hF = binom(i + n, n), binom(i + j + n, n)
    if hE == 0 or hF == 0:
        return SKSResult(None, False, False, field=p,
                         caveat="not applicable: the definition needs h^0(E) and h^0(F) nonzero")
    count = subspace_count(hE, p)
    if count > budget:
        raise BudgetExceeded(f"{count} subspaces of F_{p}^{hE} exceed the budget {budget}")

    full = np.eye(hE, dtype=np.int64)
    surjective = multiplication_image_dim(n, i, j, full, p) == hF
    worst, worst_basis = None, ()
    by_dim = {}
    checked = 0
    for k in range(1, hE):
        for B in rref_subspaces(hE, k, p):
            w = multiplication_image_dim(n, i, j, B, p)
            margin = Fraction(w, hF) - Fraction(k, hE)
            checked += 1
            if k not in by_dim or margin < by_dim[k]:
                by_dim[k] = margin
            if worst is None or margin < worst:
                worst, worst_basis = margin, tuple(tuple(int(x) for x in row) for row in B)
    positive = all(m > 0 for m in by_dim.values())
    return SKSResult(surjective and positive, True, surjective, worst_basis, worst, by_dim,
                     checked, positive, p)


# ---------------------------------------------------------------------------
# Section-count hypotheses
# ---------------------------------------------------------------------------

def thm_bound_holds(E: Sequence[SheafInvariants], F: Sequence[SheafInvariants],
                    s: Sequence[int], t: Sequence[int]) -> bool:
    """4 max{h0(V1), h0(V2)} >= max h0(E_i) * max h0(F_j) * sum h0(E_i)^2, exactly.

    V1 = sum E_i^{s_i}, V2 = sum F_j^{t_j}.  Returns False when h0(V2) = 0.
    """
    if len(E) != len(s) or len(F) != len(t):
        raise ValueError("multiplicity lists must match the sheaf lists")
    if not E or not F:
        raise ValueError("need at least one E and one F")
    if any(x < 0 for x in list(s) + list(t)):
        raise ValueError("multiplicities must be nonnegative")
    h1 = sum(si * e.h0 for si, e in zip(s, E))
    h2 = sum(tj * f.h0 for tj, f in zip(t, F))
    if h2 == 0:
        return False
    rhs = max(e.h0 for e in E) * max(f.h0 for f in F) * sum(e.h0 ** 2 for e in E)
    return 4 * max(h1, h2) >= rhs


def line_bundle_bound_holds(n: int, d: Sequence[int], s: Sequence[int],
                            e: Sequence[int], t: Sequence[int]) -> bool:
    """The line-bundle form, for 0 <= d_1 < ... < d_a < e_1 < ... < e_b."""
    degs = list(d) + list(e)
    if degs != sorted(set(degs)) or (degs and degs[0] < 0):
        raise ValueError("need 0 <= d_1 < ... < d_a < e_1 < ... < e_b")
    return thm_bound_holds([line_bundle(n, x) for x in d], [line_bundle(n, x) for x in e], s, t)


def single_pair_bound_holds(n: int, d: int, s: int, e: int, t: int) -> bool:
    """max{s h0(O(d)), t h0(O(e))} >= h0(O(d))^3 h0(O(e)) / 4."""
    if not 0 <= d < e:
        raise ValueError("need 0 <= d < e")
    return line_bundle_bound_holds(n, [d], [s], [e], [t])


def scale_terms(n: int, r: int, t: int) -> tuple[Fraction, Fraction]:
    alpha, beta = alpha_beta(n, r, t)
    first = Fraction(binom(alpha + n - 1, n) ** 2 * binom(alpha + n, n), 4 * (t + r))
    second = Fraction(binom(beta + n - 1, n) ** 3, 4 * t)
    return first, second


def steiner_scale_bound(n: int, r: int, t: int) -> int:
    """Least m >= 1 meeting the sufficient scale condition for ker(O^{m(t+r)} -> O(1)^{mt})."""
    if t < 1:
        raise ValueError("need t >= 1")
    if r < n:
        raise ValueError(f"r = {r} < n = {n}")
    bound = max(scale_terms(n, r, t))
    return max(1, ceil(bound))


# ---------------------------------------------------------------------------
# Mutations
# ---------------------------------------------------------------------------

def mutate_left(pair: PairData) -> SheafInvariants:
    """L_E F = ker(E (x) Hom(E, F) -> F); h0 assumes the evaluation is onto on sections."""
    E, F, hom = pair.left, pair.right, pair.hom_dim
    rank = hom * E.rank - F.rank
    if rank < 1:
        raise ValueError(f"left mutation would have rank {rank}")
    return SheafInvariants(rank, hom * E.h0 - F.h0, f"L_{{{E.label}}}{F.label}",
                           ("h0 assumes H^0(E) (x) Hom(E,F) -> H^0(F) is onto",))


def mutate_right(pair: PairData) -> SheafInvariants:
    """R_F E = coker(E -> F (x) Hom(E, F)^*); h0 assumes H^1(E) = 0."""
    E, F, hom = pair.left, pair.right, pair.hom_dim
    rank = hom * F.rank - E.rank
    if rank < 1:
        raise ValueError(f"right mutation would have rank {rank}")
    return SheafInvariants(rank, hom * F.h0 - E.h0, f"R_{{{F.label}}}{E.label}",
                           ("h0 assumes H^1(E) = 0",))


def mutation_chain(pair: PairData, side: str, steps: int,
                   hom_dims: Sequence[int] | None = None) -> list[SheafInvariants]:
    """[E, F] followed by L_1, L_2, ... (or R_1, R_2, ...).

    L_1 = L_E F and L_i = L_{L_{i-1}} L_{i-2}; R_1 = R_F E and R_i = R_{R_{i-1}} R_{i-2}.
    ``hom_dims[k]`` is the Hom dimension used at step k+1; it defaults to
    ``pair.hom_dim`` at every step, since nothing forces it to be preserved.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if hom_dims is None:
        hom_dims = [pair.hom_dim] * steps
    if len(hom_dims) < steps:
        raise ValueError(f"need {steps} hom dimensions, got {len(hom_dims)}")
    out = [pair.left, pair.right]
    # (older, newer) in the recursion: new = hom * newer - older
    older, newer = (pair.right, pair.left) if side == "left" else (pair.left, pair.right)
    for k in range(steps):
        hom = hom_dims[k]
        if hom < 1:
            raise ValueError(f"step {k + 1}: hom_dim must be positive")
        if side == "left":
            new = mutate_left(PairData(newer, older, hom))
        else:
            new = mutate_right(PairData(older, newer, hom))
        if hom * newer.rank != new.rank + older.rank:
            raise AssertionError("rank additivity failed")
        out.append(new)
        older, newer = newer, new
    return out
