"""Frequentist tests of ordinal first-order dominance and single crossing.

``test_sd1`` is a generic moment-selection max-t test: inequalities whose
t-statistic is far below zero are dropped before the critical value is
simulated at the least favourable point (all selected differences zero).
It follows the refined-moment-selection idea but does not reproduce its
tuning tables or weight matrices.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.special import ndtri

from .core import InvalidInputError, OrdinalCdf, check_same_J, theta
from .gausssim import CritValConfig, Statistic, correlation_from_sigma, simulate_phi_quantile


class Hypothesis(str, enum.Enum):
    SD1_XY = "sd1"
    NONSD1_XY = "nonsd1"
    SC_XY = "sc"


@dataclass
class TestReport:
    hypothesis: Hypothesis
    alpha: float
    statistic: float
    critical_value: Optional[float]
    reject: bool
    theta_hat: np.ndarray
    t_stats: np.ndarray
    selected_moments: Optional[List[int]] = None
    per_k_decisions: Optional[List[dict]] = None
    kappa: Optional[float] = None

    __test__ = False  # keep pytest from collecting this class


def pooled_covariance(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> np.ndarray:
    """Covariance of ``theta_hat``: ``Sigma_X / n_X + Sigma_Y / n_Y``.

    This is ``(Sigma_X + delta * Sigma_Y) / n_X`` with ``delta = n_X / n_Y``.
    """
    return cdfX.Sigma / cdfX.n + cdfY.Sigma / cdfY.n


def t_statistics(est: np.ndarray, se: np.ndarray) -> np.ndarray:
    """``est / se`` with zero standard errors mapped to -inf, 0 or +inf."""
    est = np.asarray(est, dtype=float)
    se = np.asarray(se, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = est / se
    zero = se == 0
    t[zero & (est > 0)] = np.inf
    t[zero & (est < 0)] = -np.inf
    t[zero & (est == 0)] = 0.0
    return t


def selection_threshold(n_x: float, n_y: float) -> float:
    """``kappa = sqrt(2 ln ln n)`` with ``n = min(n_X, n_Y)``, floored at 1."""
    n = min(n_x, n_y)
    if n <= math.e:
        return 1.0
    return max(1.0, math.sqrt(max(0.0, 2.0 * math.log(math.log(n)))))


def max_t_test(est, V, alpha: float, kappa: float, cfg: CritValConfig) -> dict:
    """Moment-selection test of ``H0: mean(est) <= 0`` componentwise.

    ``V`` is the covariance of ``est``.  Returns the statistic, critical value,
    selected (0-based) components and the decision.
    """
    est = np.asarray(est, dtype=float)
    V = np.asarray(V, dtype=float)
    t = t_statistics(est, np.sqrt(np.diag(V)))
    stat = float(t.max())
    selected = [int(i) for i in np.flatnonzero(t > -kappa)]
    if not selected:
        return dict(statistic=stat, critical_value=math.inf, selected=selected, reject=False, t=t)
    live = [i for i in selected if V[i, i] > 0]
    if live:
        R, _ = correlation_from_sigma(V[np.ix_(live, live)])
        q = simulate_phi_quantile(R, cfg.with_stat(Statistic.MAX), 1 - alpha)
        crit = float(ndtri(q))
    else:
        crit = 0.0
    return dict(statistic=stat, critical_value=crit, selected=selected, reject=bool(stat > crit), t=t)


def _check(cdfX, cdfY, alpha):
    check_same_J(cdfX, cdfY)
    if not 0 < alpha < 0.5:
        raise InvalidInputError("alpha must lie in (0, 0.5)")


def test_sd1(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float = 0.05, cfg: Optional[CritValConfig] = None
) -> TestReport:
    """Test ``H0: F_X(j) <= F_Y(j)`` for all ``j`` (X dominates Y)."""
    _check(cdfX, cdfY, alpha)
    cfg = cfg or CritValConfig()
    th = theta(cdfX, cdfY)
    kappa = selection_threshold(cdfX.n, cdfY.n)
    res = max_t_test(th, pooled_covariance(cdfX, cdfY), alpha, kappa, cfg)
    return TestReport(
        Hypothesis.SD1_XY, alpha, res["statistic"], res["critical_value"], res["reject"],
        theta_hat=th, t_stats=res["t"], selected_moments=[i + 1 for i in res["selected"]],
        kappa=kappa,
    )


def test_nonsd1(cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float = 0.05) -> TestReport:
    """Intersection-union test of ``H0: F_X(j) > F_Y(j)`` for some ``j``.

    Rejection is evidence that X dominates Y.
    """
    _check(cdfX, cdfY, alpha)
    th = theta(cdfX, cdfY)
    t = t_statistics(th, np.sqrt(np.diag(pooled_covariance(cdfX, cdfY))))
    crit = -float(ndtri(1 - alpha))
    stat = float(t.max())
    return TestReport(Hypothesis.NONSD1_XY, alpha, stat, crit, bool(stat < crit), theta_hat=th, t_stats=t)


def sc_signs(J: int, k: int) -> np.ndarray:
    """``+1`` for categories ``1..k``, ``-1`` for ``k+1..J-1``."""
    return np.where(np.arange(1, J) <= k, 1.0, -1.0)


def test_sc(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float = 0.05, cfg: Optional[CritValConfig] = None
) -> TestReport:
    """Test ``H0``: X's ordinal CDF crosses Y's exactly once from below.

    For every candidate crossing ``k`` the sign-flipped differences are tested
    with the moment-selection test; ``H0`` is rejected only if all are.
    """
    _check(cdfX, cdfY, alpha)
    J = cdfX.J
    if J < 3:
        raise InvalidInputError("single crossing needs J >= 3")
    cfg = cfg or CritValConfig()
    th = theta(cdfX, cdfY)
    V = pooled_covariance(cdfX, cdfY)
    kappa = selection_threshold(cdfX.n, cdfY.n)
    per_k = []
    for k in range(1, J - 1):
        D = sc_signs(J, k)
        res = max_t_test(D * th, V * np.outer(D, D), alpha, kappa, cfg.substream(k))
        per_k.append(dict(
            k=k, statistic=res["statistic"], critical_value=res["critical_value"],
            selected=[i + 1 for i in res["selected"]], reject=res["reject"],
        ))
    margin = min(d["statistic"] - d["critical_value"] for d in per_k)
    return TestReport(
        Hypothesis.SC_XY, alpha, float(margin), None, all(d["reject"] for d in per_k),
        theta_hat=th, t_stats=t_statistics(th, np.sqrt(np.diag(V))),
        per_k_decisions=per_k, kappa=kappa,
    )
