"""Posterior probabilities of ordinal relationships under a Dirichlet-multinomial model."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import InvalidInputError

IMPROPER_EPS = 1e-10


class Event(str, enum.Enum):
    SD1_XY = "sd1_xy"
    SD1_YX = "sd1_yx"
    SC_XY = "sc_xy"
    SC_YX = "sc_yx"


class Decision(str, enum.Enum):
    SUPPORT = "support"
    REJECT = "reject"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PosteriorConfig:
    draws: int = 10000
    seed: int = 0
    prior: str = "uniform"

    def __post_init__(self):
        if self.draws < 1000:
            raise InvalidInputError("need at least 1000 posterior draws")
        if self.prior not in ("uniform", "improper"):
            raise InvalidInputError("prior must be 'uniform' or 'improper'")


def _as_counts(counts) -> np.ndarray:
    c = np.asarray(counts, dtype=float)
    if c.ndim != 1 or c.size < 2:
        raise InvalidInputError("counts need at least two categories")
    if np.any(c < 0) or np.any(c != np.round(c)):
        raise InvalidInputError("Bayesian inference needs nonnegative integer counts")
    if c.sum() < 1:
        raise InvalidInputError("counts must total at least one")
    return c


def dirichlet_cdf_draws(counts, draws: int, rng: np.random.Generator, prior: str = "uniform") -> np.ndarray:
    """Posterior draws of ``F(1..J-1)``, shape ``(draws, J-1)``."""
    c = _as_counts(counts)
    if prior == "uniform":
        shape = c + 1.0
    else:
        # near-improper Dirichlet(eps); eps keeps zero-count shapes positive
        shape = c + IMPROPER_EPS
    g = rng.standard_gamma(shape, size=(draws, c.size))
    p = g / g.sum(axis=1, keepdims=True)
    return np.cumsum(p, axis=1)[:, :-1]


def event_holds(theta_draws: np.ndarray, event: Event) -> np.ndarray:
    """Boolean per draw: does ``theta = F_X - F_Y`` lie in the event's region?"""
    event = Event(event)
    th = theta_draws if event in (Event.SD1_XY, Event.SC_XY) else -theta_draws
    if event in (Event.SD1_XY, Event.SD1_YX):
        return np.all(th <= 0, axis=1)
    J1 = th.shape[1]
    hit = np.zeros(th.shape[0], dtype=bool)
    for k in range(1, J1):
        hit |= np.all(th[:, :k] < 0, axis=1) & np.all(th[:, k:] > 0, axis=1)
    return hit


def posterior_draws(countsX, countsY, cfg: PosteriorConfig) -> np.ndarray:
    """Posterior draws of ``theta``; X and Y use independent substreams."""
    cx, cy = _as_counts(countsX), _as_counts(countsY)
    if cx.size != cy.size:
        raise InvalidInputError("X and Y must have the same number of categories")
    sx, sy = np.random.SeedSequence(cfg.seed).spawn(2)
    fx = dirichlet_cdf_draws(cx, cfg.draws, np.random.default_rng(sx), cfg.prior)
    fy = dirichlet_cdf_draws(cy, cfg.draws, np.random.default_rng(sy), cfg.prior)
    return fx - fy


def posterior_prob(countsX, countsY, event, cfg: PosteriorConfig = PosteriorConfig()) -> float:
    """Fraction of posterior draws in which ``event`` holds."""
    return float(event_holds(posterior_draws(countsX, countsY, cfg), Event(event)).mean())


def bayes_decision(prob: float, alpha: float = 0.05) -> Decision:
    if prob > 1 - alpha:
        return Decision.SUPPORT
    if prob < alpha:
        return Decision.REJECT
    return Decision.INCONCLUSIVE


def kish_integer_counts(counts, n_eff: float) -> np.ndarray:
    """Rescale weighted totals to sum to ``n_eff`` and round to integers."""
    c = np.asarray(counts, dtype=float)
    return np.round(c / c.sum() * n_eff)
