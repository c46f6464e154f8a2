"""Argument checks shared by the estimators and the functional API."""
from __future__ import annotations

from numbers import Integral

import numpy as np

from .bott import LineBundleSum


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size budget."""


def check_int(value, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, (Integral, np.integer)):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_dimension(n, minimum: int = 1) -> int:
    return check_int(n, "n", minimum)


def check_sum(V, n: int, name: str) -> LineBundleSum:
    """Accept a LineBundleSum or its ``d^s`` text form."""
    if isinstance(V, str):
        V = LineBundleSum.parse(n, V)
    if not isinstance(V, LineBundleSum):
        raise TypeError(f"{name} must be a LineBundleSum or a 'd^s,...' string")
    if V.n != n:
        raise ValueError(f"{name} lives on P^{V.n}, expected P^{n}")
    return V


def check_twists(X) -> np.ndarray:
    """Twists as a 1-d int array; a column vector ``(k, 1)`` is accepted too."""
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"twists must be 1-d or a single column, got shape {arr.shape}")
    if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
        raise ValueError("twists must be integers")
    return arr.astype(np.int64)
