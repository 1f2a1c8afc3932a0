"""Latent quantile comparisons from ordinal data.

Identified sets, inner confidence sets, and frequentist/Bayesian tests of
ordinal stochastic dominance and single crossing.
"""

__version__ = "0.1.0"

from .core import (
    InvalidInputError,
    MergeSpec,
    OrdinalCdf,
    OrdinalSample,
    estimate_cdf,
    merge_categories,
    theta,
)
from .intervals import QuantileSet, RectSet, qs_contains, qs_subset, qs_union, rect_subset
from .identify import between_set, single_crossing, within_all_set, within_pair_sets
from .gausssim import (
    CritValConfig,
    NumericalError,
    Statistic,
    correlation_from_sigma,
    critvals_method1,
    critvals_method2,
    critvals_method3,
    simulate_phi_quantile,
)
from .confsets import ConfLimits, cs_between, cs_within_all, cs_within_fixed
from .freqtests import TestReport, test_nonsd1, test_sc, test_sd1
from .bayes import Event, PosteriorConfig, bayes_decision, posterior_prob

__all__ = [
    "InvalidInputError", "MergeSpec", "OrdinalCdf", "OrdinalSample", "estimate_cdf",
    "merge_categories", "theta", "QuantileSet", "RectSet", "qs_contains", "qs_subset",
    "qs_union", "rect_subset", "between_set", "single_crossing", "within_all_set",
    "within_pair_sets", "CritValConfig", "NumericalError", "Statistic",
    "correlation_from_sigma", "critvals_method1", "critvals_method2", "critvals_method3",
    "simulate_phi_quantile", "ConfLimits", "cs_between", "cs_within_all", "cs_within_fixed",
    "TestReport", "test_nonsd1", "test_sc", "test_sd1", "Event", "PosteriorConfig",
    "bayes_decision", "posterior_prob",
]
