"""Polar factor by Riemannian gradient descent on the orthogonal group."""

from ._core import (
    PolarError,
    ProcrustesProblem,
    certificate_sweep,
    compare_solvers,
    distance,
    exp_map,
    haar_sample,
    log_map,
    parallel_transport,
    polar_newton,
    polar_svd,
    solve,
)

__all__ = [
    "PolarError",
    "ProcrustesProblem",
    "certificate_sweep",
    "compare_solvers",
    "distance",
    "exp_map",
    "haar_sample",
    "log_map",
    "parallel_transport",
    "polar_newton",
    "polar_svd",
    "solve",
]
