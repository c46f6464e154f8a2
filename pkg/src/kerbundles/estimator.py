"""scikit-learn style estimator over the cohomology tables.

Kept apart from :mod:`kerbundles.cohomology` so the functional API and the
command line never pay for importing scikit-learn.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_dimension, check_int, check_sum, check_twists
from .cohomology import KINDS, CohomologyTable, cohomology_table, max_rank_check
from .exact import DEFAULT_PRIME
from .sections import GeneralMapSpec



class KernelBundle(TransformerMixin, BaseEstimator):
    """Kernel (or cokernel) of a general map between line-bundle sums on P^n.

    ``fit`` fixes the random specialization; ``transform`` maps an array of
    twists to the matrix of h^i(V(a)), one row per twist, columns i = 0..n.

    Parameters
    ----------
    n : int
        Dimension of the projective space.
    source, target : str or LineBundleSum
        The sums, e.g. ``"2^4"`` and ``"4^1"``.
    kind : {"kernel", "cokernel"}
    seed, prime, trials : int
        The reproducible specialization: trial forms come from ``seed`` and the
        reported rank is the max over ``trials``.
    backend : {"prime-field", "rational"}

    Attributes
    ----------
    spec_ : GeneralMapSpec
    """

    def __init__(self, n=3, source="0^4", target="1^1", kind="kernel", seed=0,
                 prime=DEFAULT_PRIME, trials=3, backend="prime-field"):
        self.n = n
        self.source = source
        self.target = target
        self.kind = kind
        self.seed = seed
        self.prime = prime
        self.trials = trials
        self.backend = backend

    def fit(self, X=None, y=None):
        n = check_dimension(self.n, 2)
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        self.spec_ = GeneralMapSpec(
            check_sum(self.source, n, "source"), check_sum(self.target, n, "target"),
            seed=check_int(self.seed, "seed", 0), prime=check_int(self.prime, "prime", 2),
            trials=check_int(self.trials, "trials", 1),
        )
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        twists = check_twists(X)
        if twists.size == 0:
            return np.zeros((0, self.n + 1), dtype=np.int64)
        tab = cohomology_table(self.kind, self.spec_, twists.tolist(), self.backend)
        return np.array([tab.row(int(a)) for a in twists], dtype=np.int64)

    def table(self, window=None) -> CohomologyTable:
        check_is_fitted(self, "spec_")
        return cohomology_table(self.kind, self.spec_, window, self.backend)

    def max_rank(self) -> tuple[bool, int]:
        check_is_fitted(self, "spec_")
        return max_rank_check(self.spec_, self.backend)
