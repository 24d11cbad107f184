"""Multiplicative structure toolkit: sieve records, duality sums, series
accumulators, smooth counting, and the Dickman density."""

try:
    from ._factdual import *  # noqa: F401,F403
    from ._factdual import __doc__ as _core_doc
except ImportError:  # extension built out-of-tree (development layout)
    from _factdual import *  # noqa: F401,F403
    from _factdual import __doc__ as _core_doc

__all__ = [
    "FactorRecord",
    "RhoTable",
    "build_rho_table",
    "dual_sum_largest",
    "dual_sum_smallest",
    "factor_record",
    "factorize",
    "floor_weighted_sum",
    "identity_names",
    "identity_sides",
    "inv_sum_second_largest",
    "inv_sum_smallest_side",
    "psi",
    "psi2",
    "repeated_lpf_count",
    "residue_counts",
    "rho2_empirical",
    "run_experiments",
    "series_totals",
    "sieve_records",
    "smooth_ratio",
    "smoothness_bound",
    "sqrt_window",
    "verify_identities",
]
