"""Simulated quantiles of Phi(min / max / max|.|) of correlated standard normals.

These calibrate the joint confidence limits and the moment-selection test.
Draws are generated in fixed-size blocks, each from its own seeded substream,
so results depend only on (R, seed, draws).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtr, ndtri

from .core import PSD_TOL, InvalidInputError, OrdinalCdf, check_same_J

BLOCK = 20000
JITTERS = (1e-10, 1e-8, 1e-6)


class NumericalError(RuntimeError):
    """A numerical routine failed (e.g. Cholesky after maximal jitter)."""


class Statistic(str, enum.Enum):
    MIN = "min"
    MAX = "max"
    MAX_ABS = "max_abs"
    MAX_SIGNED = "max_signed"


@dataclass(frozen=True)
class CritValConfig:
    draws: int = 100000
    seed: int = 0
    statistic: Statistic = Statistic.MIN
    signs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "statistic", Statistic(self.statistic))
        if self.draws < 1000:
            raise InvalidInputError("need at least 1000 simulation draws")
        if self.statistic is Statistic.MAX_SIGNED:
            if self.signs is None or any(s not in (1, -1) for s in self.signs):
                raise InvalidInputError("MAX_SIGNED needs a vector of +1/-1 signs")
            object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))

    def with_stat(self, statistic, signs=None) -> "CritValConfig":
        return replace(self, statistic=Statistic(statistic), signs=signs)

    def substream(self, *key: int) -> "CritValConfig":
        """Config whose seed is derived from this seed and ``key``."""
        seed = int(np.random.SeedSequence([self.seed, *key]).generate_state(1, np.uint64)[0])
        return replace(self, seed=seed)


def correlation_from_sigma(Sigma) -> Tuple[np.ndarray, np.ndarray]:
    """Correlation matrix of the nondegenerate components of ``Sigma``.

    Returns ``(R, dropped)`` where ``dropped`` lists 0-based indices with a
    zero variance.  Those components never miss their confidence limit, so
    they are left out of the simulation.
    """
    S = np.asarray(Sigma, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise InvalidInputError("covariance must be square")
    if not np.allclose(S, S.T, rtol=0, atol=PSD_TOL):
        raise InvalidInputError("covariance must be symmetric")
    if S.size and np.linalg.eigvalsh(S).min() < -PSD_TOL:
        raise InvalidInputError("covariance is not positive semidefinite")
    d = np.diag(S)
    keep = d > 0
    dropped = np.flatnonzero(~keep)
    Sk = S[np.ix_(keep, keep)]
    sd = np.sqrt(np.diag(Sk))
    R = Sk / np.outer(sd, sd)
    np.fill_diagonal(R, 1.0)
    return R, dropped


def cholesky_jittered(R: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(R)
    except np.linalg.LinAlgError:
        pass
    for eps in JITTERS:
        try:
            return np.linalg.cholesky(R + eps * np.eye(R.shape[0]))
        except np.linalg.LinAlgError:
            continue
    raise NumericalError("correlation matrix is not positive definite even after jitter")


def gaussian_draws(R, draws: int, seed: int) -> np.ndarray:
    """``draws`` rows of N(0, R), generated block by block from seeded substreams."""
    R = np.asarray(R, dtype=float)
    d = R.shape[0]
    L = cholesky_jittered(R)
    nblocks = math.ceil(draws / BLOCK)
    children = np.random.SeedSequence(seed).spawn(nblocks)
    out = np.empty((draws, d))
    for b, ss in enumerate(children):
        lo, hi = b * BLOCK, min((b + 1) * BLOCK, draws)
        z = np.random.default_rng(ss).standard_normal((hi - lo, d))
        out[lo:hi] = z @ L.T
    return out


def apply_statistic(Z: np.ndarray, cfg: CritValConfig) -> np.ndarray:
    if cfg.statistic is Statistic.MIN:
        return Z.min(axis=1)
    if cfg.statistic is Statistic.MAX:
        return Z.max(axis=1)
    if cfg.statistic is Statistic.MAX_ABS:
        return np.abs(Z).max(axis=1)
    signs = np.asarray(cfg.signs, dtype=float)
    if signs.size != Z.shape[1]:
        raise InvalidInputError("sign vector length does not match the dimension")
    return (Z * signs).max(axis=1)


def _validate_correlation(R) -> np.ndarray:
    R = np.atleast_2d(np.asarray(R, dtype=float))
    if R.shape[0] != R.shape[1] or R.shape[0] < 1:
        raise InvalidInputError("correlation matrix must be square and nonempty")
    if not np.allclose(np.diag(R), 1.0, atol=1e-12) or not np.allclose(R, R.T, atol=PSD_TOL):
        raise InvalidInputError("not a correlation matrix")
    if np.any(np.abs(R) > 1 + 1e-12):
        raise InvalidInputError("correlations must lie in [-1, 1]")
    return R


def simulate_phi_draws(R, cfg: CritValConfig) -> np.ndarray:
    """Simulated values of ``Phi(s(Z))`` with ``Z ~ N(0, R)``."""
    R = _validate_correlation(R)
    Z = gaussian_draws(R, cfg.draws, cfg.seed)
    return ndtr(apply_statistic(Z, cfg))


def simulate_phi_quantile(R, cfg: CritValConfig, p: float) -> float:
    """Empirical ``p``-quantile of ``Phi(s(Z))``."""
    if not 0 < p < 1:
        raise InvalidInputError("quantile level must lie in (0, 1)")
    return float(np.quantile(simulate_phi_draws(R, cfg), p))


class CritVals(NamedTuple):
    """Pointwise levels ``tilde_alpha``/``tilde_beta`` and the matching normal
    multipliers applied to the standard errors of X and Y."""

    tilde_alpha: float
    tilde_beta: float
    z_x: float
    z_y: float


def _reduced(cdf: OrdinalCdf, idx: Optional[Sequence[int]] = None):
    """Correlation of the selected components (0-based) and the kept positions."""
    idx = list(range(cdf.J - 1)) if idx is None else list(idx)
    R, dropped = correlation_from_sigma(cdf.Sigma[np.ix_(idx, idx)])
    kept = [i for i in range(len(idx)) if i not in set(dropped)]
    return R, kept


def _phi_quantile_or_uniform(R, cfg, p) -> float:
    # every component degenerate: nothing random remains; use the 1-d value
    if R.shape[0] == 0:
        R = np.ones((1, 1))
        if cfg.statistic is Statistic.MAX_SIGNED:
            cfg = replace(cfg, signs=(1,))
    return simulate_phi_quantile(R, cfg, p)


def _check_alpha(alpha):
    if not 0 < alpha < 1:
        raise InvalidInputError("alpha must lie in (0, 1)")


def critvals_method1(cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float, cfg: CritValConfig) -> CritVals:
    """One-sided joint levels for the between-group inner confidence set."""
    check_same_J(cdfX, cdfY)
    _check_alpha(alpha)
    root = math.sqrt(1 - alpha)
    Rx, _ = _reduced(cdfX)
    Ry, _ = _reduced(cdfY)
    ta = _phi_quantile_or_uniform(Rx, cfg.substream(0).with_stat(Statistic.MIN), 1 - root)
    tb = 1 - _phi_quantile_or_uniform(Ry, cfg.substream(1).with_stat(Statistic.MAX), root)
    return CritVals(ta, tb, float(ndtri(1 - ta)), float(ndtri(1 - tb)))


def critvals_method2(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, j: int, k: int, alpha: float, cfg: CritValConfig
) -> CritVals:
    """Levels for a fixed category pair ``j < k`` (1-based)."""
    check_same_J(cdfX, cdfY)
    _check_alpha(alpha)
    root = math.sqrt(1 - alpha)
    idx = [j - 1, k - 1]
    Rx, kx = _reduced(cdfX, idx)
    Ry, ky = _reduced(cdfY, idx)
    sx = tuple((-1, 1)[i] for i in kx)
    sy = tuple((1, -1)[i] for i in ky)
    qx = _phi_quantile_or_uniform(Rx, cfg.substream(0).with_stat(Statistic.MAX_SIGNED, sx or (1,)), root)
    qy = _phi_quantile_or_uniform(Ry, cfg.substream(1).with_stat(Statistic.MAX_SIGNED, sy or (1,)), root)
    return CritVals(1 - qx, 1 - qy, float(ndtri(qx)), float(ndtri(qy)))


def critvals_method3(cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float, cfg: CritValConfig) -> CritVals:
    """Two-sided levels; the multipliers are ``z_{1 - tilde/2}``."""
    check_same_J(cdfX, cdfY)
    _check_alpha(alpha)
    root = math.sqrt(1 - alpha)
    Rx, _ = _reduced(cdfX)
    Ry, _ = _reduced(cdfY)
    qx = _phi_quantile_or_uniform(Rx, cfg.substream(0).with_stat(Statistic.MAX_ABS), root)
    qy = _phi_quantile_or_uniform(Ry, cfg.substream(1).with_stat(Statistic.MAX_ABS), root)
    return CritVals(2 * (1 - qx), 2 * (1 - qy), float(ndtri(qx)), float(ndtri(qy)))
