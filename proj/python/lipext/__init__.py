"""Lipschitz extension toolkit for finite metric spaces and weighted graphs."""

from ._lipext import (
    LipextError,
    MetricSpace,
    check_metric,
    doubling_constant_upper,
    extend,
    extension_bound,
    free_norm,
    generate_test_space,
    has_minor,
    kpr_decompose,
    maximal_separated_net,
    means_inequality_check,
    nagata_cover,
    pnorm_threepoint,
    quasi_constant,
    reproduce_counterexample,
    run_cli,
    set_thread_limit,
    thread_count,
    trace,
    whitney_cover,
)

__all__ = [
    "LipextError",
    "MetricSpace",
    "check_metric",
    "doubling_constant_upper",
    "extend",
    "extension_bound",
    "free_norm",
    "generate_test_space",
    "has_minor",
    "kpr_decompose",
    "maximal_separated_net",
    "means_inequality_check",
    "nagata_cover",
    "pnorm_threepoint",
    "quasi_constant",
    "reproduce_counterexample",
    "run_cli",
    "set_thread_limit",
    "thread_count",
    "trace",
    "whitney_cover",
]
