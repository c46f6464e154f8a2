"""Global sections of line-bundle sums and the matrices a sheaf map induces on them.

Monomials of degree d in x_0..x_n are indexed in graded-lex order, which for a
single degree is plain lex order with x_0 largest: x_0^d comes first and x_n^d
last.  A map ``M: V1 -> V2`` between line-bundle sums is a matrix of forms, one
form per (target copy, source copy); on sections of the twist by ``a`` it
becomes a block matrix whose (j, i) block multiplies degree ``d_i + a``
polynomials by the form ``M_ji``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .bott import LineBundleSum
from .exact import DEFAULT_PRIME, SplitMix64, binom, check_prime, child_seed, rank_ffp, rank_rational


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree d in n+1 variables, graded-lex order."""
    if d < 0:
        return ()
    if n == 0:
        return ((d,),)
    out = []
    for e0 in range(d, -1, -1):
        for rest in monomials(n - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: k for k, m in enumerate(monomials(n, d))}


@dataclass(frozen=True)
class MonomialBasis:
    n: int
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("degree must be nonnegative")

    def __len__(self):
        return binom(self.d + self.n, self.n)

    def __getitem__(self, k: int) -> tuple[int, ...]:
        return monomials(self.n, self.d)[k]

    def __iter__(self):
        return iter(monomials(self.n, self.d))

    def index(self, exponents) -> int:
        return _monomial_index(self.n, self.d)[tuple(exponents)]


@lru_cache(maxsize=256)
def _product_table(n: int, m: int, d: int) -> np.ndarray:
    """T[k, l] = index of (monomial k of degree m) * (monomial l of degree d)."""
    target = _monomial_index(n, d + m)
    src = monomials(n, d)
    table = np.empty((binom(m + n, n), len(src)), dtype=np.int64)
    for k, f in enumerate(monomials(n, m)):
        for l, g in enumerate(src):
            table[k, l] = target[tuple(a + b for a, b in zip(f, g))]
    table.setflags(write=False)
    return table


def mult_matrix(n: int, f, d: int, p: int = DEFAULT_PRIME, m: int | None = None) -> np.ndarray:
    """Matrix of multiplication by the form ``f`` from degree d to degree d+m.

    ``f`` is a coefficient vector in the degree-m monomial basis; ``m`` is
    inferred from its length when not given.
    """
    f = np.asarray(f, dtype=np.int64) % p
    if d < 0:
        raise ValueError("source degree must be nonnegative")
    if m is None:
        m = 0
        while binom(m + n, n) < f.size:
            m += 1
    if f.size != binom(m + n, n):
        raise ValueError(f"form has {f.size} coefficients, expected C({m}+{n},{n})")
    rows, cols = binom(d + m + n, n), binom(d + n, n)
    out = np.zeros((rows, cols), dtype=np.int64)
    table = _product_table(n, m, d)
    ar = np.arange(cols)
    for k in np.flatnonzero(f):
        out[table[k], ar] += f[k]
    return out % p


def _zigzag(d: int) -> int:
    return 2 * d if d >= 0 else -2 * d - 1


Copy = tuple[int, int]
FormLookup = Callable[[Copy, Copy], "np.ndarray | None"]


@dataclass(frozen=True)
class GeneralMapSpec:
    """A reproducible random "general" map between two line-bundle sums.

    The form attached to (target copy, source copy) is drawn from a child seed
    keyed by trial and by both copies' (degree, index), so dropping a summand
    leaves every other block of the matrix untouched.  ``transposed`` marks the
    dual map ``V2^* -> V1^*``, which reuses the original forms.
    """

    source: LineBundleSum
    target: LineBundleSum
    seed: int = 0
    prime: int = DEFAULT_PRIME
    trials: int = 3
    waive_degree_check: bool = False
    transposed: bool = False

    def __post_init__(self):
        check_prime(self.prime)
        if self.source.n != self.target.n:
            raise ValueError("source and target live on different projective spaces")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not self.waive_degree_check and self.source.summands and self.target.summands:
            if min(self.target.degrees) <= max(self.source.degrees):
                raise ValueError(
                    "every target degree must exceed every source degree "
                    "(pass waive_degree_check=True to experiment)"
                )

    @property
    def n(self) -> int:
        return self.source.n

    def dual(self) -> "GeneralMapSpec":
        return GeneralMapSpec(
            self.target.dual(), self.source.dual(), self.seed, self.prime, self.trials,
            self.waive_degree_check, not self.transposed,
        )

    def drop_source_degree(self, d: int) -> "GeneralMapSpec":
        return GeneralMapSpec(
            self.source.without_degree(d), self.target, self.seed, self.prime, self.trials,
            self.waive_degree_check, self.transposed,
        )

    def form(self, tcopy: Copy, scopy: Copy, trial: int) -> np.ndarray | None:
        """Coefficients of the entry from ``scopy`` to ``tcopy``; ``None`` is the zero map."""
        if self.transposed:
            tcopy, scopy = (-scopy[0], scopy[1]), (-tcopy[0], tcopy[1])
        m = tcopy[0] - scopy[0]
        if m < 0:
            return None
        return _draw_form(self.seed, trial, tcopy, scopy, binom(m + self.n, self.n), self.prime)


@lru_cache(maxsize=65536)
def _draw_form(seed: int, trial: int, tcopy: Copy, scopy: Copy, size: int, p: int) -> np.ndarray:
    key = child_seed(seed, trial, _zigzag(tcopy[0]), tcopy[1], _zigzag(scopy[0]), scopy[1])
    out = np.array(SplitMix64(key).field_elements(size, p), dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass
class SectionMatrix:
    matrix: np.ndarray
    twist: int
    row_groups: list[tuple[Copy, int, int]] = field(default_factory=list)
    col_groups: list[tuple[Copy, int, int]] = field(default_factory=list)
    seed: int | None = None
    trial: int | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def assemble(n: int, source: LineBundleSum, target: LineBundleSum, forms: FormLookup,
             a: int, p: int) -> SectionMatrix:
    """Block matrix H^0(source(a)) -> H^0(target(a)) for an explicit matrix of forms."""
    def groups(V):
        out, off = [], 0
        for d, c in V.copies():
            size = binom(d + a + n, n) if d + a >= 0 else 0
            if size:
                out.append(((d, c), off, size))
                off += size
        return out, off

    rgroups, nrows = groups(target)
    cgroups, ncols = groups(source)
    M = np.zeros((nrows, ncols), dtype=np.int64)
    for tcopy, r0, rs in rgroups:
        for scopy, c0, cs in cgroups:
            f = forms(tcopy, scopy)
            if f is None:
                continue
            M[r0:r0 + rs, c0:c0 + cs] = mult_matrix(n, f, scopy[0] + a, p, m=tcopy[0] - scopy[0])
    return SectionMatrix(M, a, rgroups, cgroups)


def section_matrix(spec: GeneralMapSpec, a: int, trial: int = 0) -> SectionMatrix:
    cache: dict = {}

    def forms(tcopy, scopy):
        key = (tcopy, scopy)
        if key not in cache:
            cache[key] = spec.form(tcopy, scopy, trial)
        return cache[key]

    sm = assemble(spec.n, spec.source, spec.target, forms, a, spec.prime)
    sm.seed, sm.trial = spec.seed, trial
    return sm


@dataclass(frozen=True)
class RankResult:
    rank: int
    rows: int
    cols: int
    trial_ranks: tuple[int, ...]
    backend: str = "prime-field"
    # A specialization's rank never exceeds the generic characteristic-0 rank.
    certified_lower_bound: bool = True

    @property
    def nullity(self) -> int:
        return self.cols - self.rank

    @property
    def corank(self) -> int:
        return self.rows - self.rank


def generic_rank(spec: GeneralMapSpec, a: int, backend: str = "prime-field") -> RankResult:
    """Max rank of the twisted section matrix over ``spec.trials`` random trials.

    With ``backend="rational"`` each trial's matrix is read as an integer
    matrix (representatives in [0, p)) and its rank is taken over Q.  Trials
    stop early once one reaches min(rows, cols), since no later trial can beat it.
    """
    if backend not in ("prime-field", "rational"):
        raise ValueError(f"unknown backend {backend!r}")
    ranks = []
    shape = (0, 0)
    for trial in range(spec.trials):
        M = section_matrix(spec, a, trial).matrix
        shape = M.shape
        if M.size == 0:
            ranks.append(0)
        elif backend == "prime-field":
            ranks.append(rank_ffp(M, spec.prime))
        else:
            ranks.append(rank_rational(M.tolist()))
        if ranks[-1] == min(shape):
            break
    return RankResult(max(ranks), shape[0], shape[1], tuple(ranks), backend)
