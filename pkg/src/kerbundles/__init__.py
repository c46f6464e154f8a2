"""Cohomology, stability and ampleness of kernel bundles on projective space."""
from .bott import LineBundleSum, TwistWindow, alpha_beta, chi_sum, h_line
from .cohomology import (CohomologyTable, NaturalVerdict, cohomology_table, max_rank_check,
                         natural_check, sweep)
from .exact import DEFAULT_PRIME, SplitMix64, rank_ffp, rank_rational
from .sections import GeneralMapSpec, generic_rank, section_matrix

__version__ = "0.1.0"


def __getattr__(name):
    # scikit-learn is slow to import; load the estimator only on request
    if name == "KernelBundle":
        from .estimator import KernelBundle
        return KernelBundle
    raise AttributeError(f"module 'kerbundles' has no attribute {name!r}")
