"""Exact positivity certificates and residual-bound verification for
Newton/Halley pth-root iterations.

Rationals cross the boundary as exact "num/den" strings; nothing is ever
rounded on the certification paths.
"""

from rootbound._core import (
    CertifyError,
    __version__,
    binomial_root_series,
    certify,
    certify_weights,
    check_map_contraction,
    check_no_pole_no_zero,
    check_residual_bounds,
    estimate_convergence_order,
    iterate_series,
    map_series,
    prefix_agreement,
    residual_map,
    run_iteration,
    sample_disk,
    weights,
)

__all__ = [
    "CertifyError",
    "__version__",
    "binomial_root_series",
    "certify",
    "certify_weights",
    "check_map_contraction",
    "check_no_pole_no_zero",
    "check_residual_bounds",
    "estimate_convergence_order",
    "iterate_series",
    "map_series",
    "prefix_agreement",
    "residual_map",
    "run_iteration",
    "sample_disk",
    "weights",
]
