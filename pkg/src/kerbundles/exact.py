"""Exact arithmetic foundations.

Integers are Python ints, rationals are :class:`fractions.Fraction`, and
matrices over a prime field are dense numpy arrays holding representatives
in ``[0, p)``.  Nothing in this module touches floating point except the
blocked rank kernel, which uses float64 BLAS products only on operands whose
exact sums provably stay below 2**53.

Random "general" matrices come from SplitMix64 (Steele, Lea, Flood 2014):

    state <- state + 0x9E3779B97F4A7C15              (mod 2**64)
    z     <- state
    z     <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
    z     <- (z xor (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
    out   <- z xor (z >> 31)

A field element is drawn by rejection: outputs ``>= 2**64 - (2**64 mod p)``
are discarded and the survivor is reduced mod ``p``.  Child streams are
derived with :func:`child_seed`, never by sharing a generator.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

DEFAULT_PRIME = 32003

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

Rational = Fraction


def binom(a: int, k: int) -> int:
    """C(a, k) with the convention C(a, k) = 0 for k > a or negative arguments."""
    if a < 0 or k < 0 or k > a:
        return 0
    return comb(a, k)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for every p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


# ---------------------------------------------------------------------------
# SplitMix64
# ---------------------------------------------------------------------------

def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The SplitMix64 generator; see the module docstring for the state update."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return _mix64(self.state)

    def field_element(self, p: int) -> int:
        limit = (1 << 64) - ((1 << 64) % p)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % p

    def field_elements(self, count: int, p: int) -> list[int]:
        return [self.field_element(p) for _ in range(count)]


def child_seed(seed: int, *path: int) -> int:
    """Derive an independent 64-bit seed from ``seed`` and a path of nonnegative keys.

    Each key is folded in as ``state <- mix64(state xor (key+1)*golden)`` followed
    by one generator step, so distinct paths give unrelated streams.
    """
    state = int(seed) & _MASK64
    for key in path:
        state = _mix64(state ^ (((int(key) + 1) * _GOLDEN) & _MASK64))
        state = SplitMix64(state).next_u64()
    return state


def rng_matrix(rows: int, cols: int, seed: int, p: int = DEFAULT_PRIME) -> np.ndarray:
    """A ``rows x cols`` matrix of uniform F_p entries, filled row-major from ``seed``."""
    p = check_prime(p)
    if rows < 0 or cols < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    gen = SplitMix64(seed)
    data = gen.field_elements(rows * cols, p)
    return np.array(data, dtype=np.int64).reshape(rows, cols)


# ---------------------------------------------------------------------------
# Rank over F_p
# ---------------------------------------------------------------------------

_PANEL = 64


def _fmod(Z: np.ndarray, p: int) -> np.ndarray:
    # Z holds exact integers below 2**53; the float quotient may be off by one.
    Z -= np.floor(Z * (1.0 / p)) * p
    Z[Z < 0] += p
    Z[Z >= p] -= p
    return Z


_BASE_PANEL = 8


def _panel_base(P: np.ndarray, p: int) -> tuple[np.ndarray, list[int], np.ndarray]:
    m, w = P.shape
    Q = np.zeros((m, 2 * w), dtype=np.float64)
    Q[:, :w] = P
    perm = np.arange(m)
    pivcols: list[int] = []
    r = 0
    for j in range(w):
        if r == m:
            break
        nz = np.flatnonzero(Q[r:, j])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            Q[[r, piv]] = Q[[piv, r]]
            perm[[r, piv]] = perm[[piv, r]]
        Q[r, w + r] = 1.0
        pivcols.append(j)
        if r + 1 < m:
            rows = r + 1 + np.flatnonzero(Q[r + 1:, j])
            if rows.size:
                inv = pow(int(Q[r, j]), -1, p)
                head = _fmod(Q[r, j + 1:] * inv, p)
                Q[rows, j + 1:] = _fmod(Q[rows, j + 1:] - np.outer(Q[rows, j], head), p)
                Q[rows, j] = 0
        r += 1
    k = len(pivcols)
    return perm, pivcols, Q[k:, w:w + k]


def _panel_eliminate(P: np.ndarray, p: int) -> tuple[np.ndarray, list[int], np.ndarray]:
    """Forward elimination of an m x w panel with residues in [0, p).

    Returns the row permutation, the pivot columns, and Z such that on the
    panel every non-pivot row satisfies ``row_i = -Z[i] @ pivot_rows`` (original
    rows, pivot order), so the trailing update is ``T_i += Z[i] @ U``.

    The base case carries the multipliers as w extra columns (Z[q, q] = 1 when
    row q becomes pivot q).  Wider panels split in half: eliminate the left
    half, push its multipliers Z1 through the right half with one product, then
    eliminate what is left and compose Z = [Z1_rest + Z2 @ Z1_top2, Z2].
    """
    m, w = P.shape
    if w <= _BASE_PANEL:
        return _panel_base(P, p)
    h = w // 2
    perm1, piv1, Z1 = _panel_eliminate(P[:, :h], p)
    k1 = len(piv1)
    if k1 == m:
        return perm1, piv1, Z1
    R = P[perm1, h:]
    if k1:
        R[k1:] = _fmod(R[k1:] + Z1 @ R[:k1], p)
    perm2, piv2, Z2 = _panel_eliminate(R[k1:], p)
    k2 = len(piv2)
    perm = perm1.copy()
    perm[k1:] = perm1[k1:][perm2]
    pivcols = piv1 + [h + c for c in piv2]
    if k1 == 0:
        return perm, pivcols, Z2
    Z1 = Z1[perm2]
    left = _fmod(Z1[k2:] + Z2 @ Z1[:k2], p) if k2 else Z1
    return perm, pivcols, np.concatenate([left, Z2], axis=1)


def _rank_blocked(A: np.ndarray, p: int, width: int) -> int:
    # The trailing block is reduced lazily: ``bound`` tracks the largest possible
    # |entry|, and a full reduction happens only before it could pass 2**53.
    rank = 0
    A = np.asarray(A, dtype=np.float64)
    limit = float(1 << 53)
    step = float(width) * p * p
    bound = float(p)
    while A.shape[0] and A.shape[1]:
        w = min(width, A.shape[1])
        panel = A[:, :w].copy()
        if bound >= p:
            _fmod(panel, p)
        perm, pivcols, Z = _panel_eliminate(panel, p)
        k = len(pivcols)
        if k == 0:
            A = A[:, w:]
            continue
        rank += k
        if k == A.shape[0] or w == A.shape[1]:
            A = A[perm[k:], w:]
            continue
        A = A[perm]
        U = _fmod(A[:k, w:].copy(), p)
        T = A[k:, w:]
        T += Z @ U
        bound += step
        if bound + step >= limit:
            _fmod(T, p)
            bound = float(p)
        A = T
    return rank


def _rank_object(A: Sequence[Sequence[int]], p: int) -> int:
    rows = [[int(x) % p for x in row] for row in A]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        prow = [x * inv % p for x in rows[rank]]
        rows[rank] = prow
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        rank += 1
    return rank


def rank_ffp(M, p: int = DEFAULT_PRIME) -> int:
    """Exact rank of an integer matrix reduced mod the prime ``p``.

    Dense blocked elimination: 64-column panels are reduced in int64, and the
    trailing Schur complement is updated with float64 matrix products, which are
    exact because every partial sum is bounded by ``width * p**2 < 2**53``.
    Primes too large for that bound fall back to Python-int elimination.
    """
    A = np.asarray(M, dtype=object) if not isinstance(M, np.ndarray) else M
    if A.ndim != 2:
        raise ValueError("rank_ffp expects a 2-d matrix")
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = A.T
    width = min(_PANEL, (1 << 53) // (p * p))
    if width >= 1 and p < (1 << 31):
        return _rank_blocked(np.mod(A.astype(np.int64), p), p, width)
    return _rank_object(A.tolist(), p)


def rank_rational(M: Iterable[Iterable[int]]) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination."""
    rows = [[int(x) for x in row] for row in M]
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[c]
            rows[i] = [(pr[c] * ri[j] - f * pr[j]) // prev for j in range(n)]
        prev = pr[c]
        rank += 1
        if rank == m:
            break
    return rank
