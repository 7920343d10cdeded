"""Thresholds, Monte Carlo estimators and bound checks for order statistics
of log-concave random vectors."""

from ._orderstat import (
    BoundReport,
    Estimate,
    Marginal,
    ThresholdResult,
    VectorModel,
    byparts_identity_check,
    estimate_mean,
    estimate_median,
    kth_max_abs,
    model_from_json,
    run_lemma_grid,
    run_suite,
    t_threshold,
    tail_probability,
    topk_abs_sum,
    tstar_threshold,
)

__all__ = [
    "BoundReport",
    "Estimate",
    "Marginal",
    "ThresholdResult",
    "VectorModel",
    "byparts_identity_check",
    "estimate_mean",
    "estimate_median",
    "kth_max_abs",
    "model_from_json",
    "run_lemma_grid",
    "run_suite",
    "t_threshold",
    "tail_probability",
    "topk_abs_sum",
    "tstar_threshold",
]
