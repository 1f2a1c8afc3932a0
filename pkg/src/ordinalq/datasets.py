"""Published ordinal CDFs of self-reported general health (NHIS 2006/2008).

Categories: 1 poor, 2 fair, 3 good, 4 very good, 5 excellent.  Values are
weighted empirical CDFs at categories 1-4; the microdata are not shipped.
"""

from __future__ import annotations

import numpy as np

from .core import OrdinalCdf, OrdinalSample

GENERAL_HEALTH = {
    "poverty_2006": (0.0439, 0.1560, 0.4558, 0.7062),
    "poverty_2008": (0.0485, 0.1656, 0.4490, 0.6710),
    "low_edu_2006": (0.0287, 0.1205, 0.3905, 0.6731),
    "high_edu_2006": (0.0161, 0.0734, 0.2957, 0.6427),
    "white_2006": (0.0212, 0.0917, 0.3303, 0.6459),
    "black_2006": (0.0277, 0.1263, 0.4150, 0.6861),
}


def health_cdf(name: str, n: float = 30000) -> OrdinalCdf:
    """Published CDF with a nominal sample size ``n`` for standard errors."""
    return OrdinalCdf.from_values(GENERAL_HEALTH[name], n, label=name)


def health_counts(name: str, n: int = 30000) -> np.ndarray:
    """Integer category counts whose proportions match the published CDF at size ``n``."""
    F = np.append(GENERAL_HEALTH[name], 1.0)
    cum = np.round(F * n).astype(int)
    return np.diff(cum, prepend=0)


def health_sample(name: str, n: int = 30000) -> OrdinalSample:
    return OrdinalSample(health_counts(name, n), n_raw=n, label=name)
