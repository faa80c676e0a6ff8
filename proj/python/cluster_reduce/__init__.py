"""Cluster maps from mutation-periodic quivers, their invariant structures,
reductions and dynamics. Thin wrapper over the C++ core."""

from ._core import (
    SCHEMA,
    Error,
    check_poisson_map,
    check_presymplectic_invariance,
    cluster_map,
    detect_period,
    find_invariant_poisson,
    fixed_points,
    fixtures,
    global_period,
    hermite_normal_form,
    mutate,
    orbit,
    reduce,
    run_pipeline,
    smith_normal_form,
)

__all__ = [
    "SCHEMA",
    "Error",
    "check_poisson_map",
    "check_presymplectic_invariance",
    "cluster_map",
    "detect_period",
    "find_invariant_poisson",
    "fixed_points",
    "fixtures",
    "global_period",
    "hermite_normal_form",
    "mutate",
    "orbit",
    "reduce",
    "run_pipeline",
    "smith_normal_form",
]
