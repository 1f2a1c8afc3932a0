"""Monte Carlo validation: latent-law oracles, coverage and size studies.

Latent laws are discrete distributions on at most a few thousand support
points, so quantiles, ordinal CDFs and the true identified sets are all
computed exactly from the same cumulative-probability array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from .confsets import cs_between, cs_within_all, cs_within_fixed
from .core import InvalidInputError, OrdinalCdf, OrdinalSample, estimate_cdf
from .freqtests import test_nonsd1, test_sc, test_sd1
from .gausssim import CritValConfig
from .identify import between_set, within_all_set, within_pair_sets
from .intervals import RectSet, qs_subset, rect_subset

MAX_GRID = 2000


@dataclass(frozen=True, eq=False)
class GridLaw:
    """Discrete law on sorted ``support`` with probabilities ``probs``."""

    support: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.support, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        if s.ndim != 1 or s.shape != p.shape or s.size == 0:
            raise InvalidInputError("support and probabilities must be matching vectors")
        if s.size > MAX_GRID:
            raise InvalidInputError(f"grid laws are limited to {MAX_GRID} points")
        if np.any(np.diff(s) <= 0) or np.any(p < 0) or p.sum() <= 0:
            raise InvalidInputError("support must increase strictly and probabilities be nonnegative")
        p = p / p.sum()
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "probs", p)
        cum = np.cumsum(p)
        cum[-1] = 1.0
        object.__setattr__(self, "_cum", cum)

    @property
    def cum(self) -> np.ndarray:
        return self._cum

    def cdf(self, q) -> np.ndarray:
        """``F(q) = P(X* <= q)``."""
        idx = np.searchsorted(self.support, q, side="right")
        return np.where(idx == 0, 0.0, self.cum[np.maximum(idx - 1, 0)])

    def quantile(self, tau) -> np.ndarray:
        return oracle_quantile(self, tau)

    @classmethod
    def from_dist(cls, dist, grid=None, points: int = MAX_GRID) -> "GridLaw":
        """Discretize a frozen scipy distribution onto ``grid`` by CDF differences."""
        if grid is None:
            lo, hi = dist.ppf(1e-6), dist.ppf(1 - 1e-6)
            grid = np.linspace(lo, hi, points)
        grid = np.asarray(grid, dtype=float)
        c = dist.cdf(grid)
        c[-1] = 1.0
        return cls(grid, np.diff(c, prepend=0.0))

    @classmethod
    def normal(cls, loc=0.0, scale=1.0, grid=None) -> "GridLaw":
        return cls.from_dist(stats.norm(loc, scale), grid)

    @classmethod
    def logistic(cls, loc=0.0, scale=1.0, grid=None) -> "GridLaw":
        return cls.from_dist(stats.logistic(loc, scale), grid)

    @classmethod
    def mixture(cls, laws: Sequence["GridLaw"], weights: Sequence[float]) -> "GridLaw":
        support = np.unique(np.concatenate([l.support for l in laws]))
        probs = np.zeros_like(support)
        for law, w in zip(laws, weights):
            probs[np.searchsorted(support, law.support)] += w * law.probs
        return cls(support, probs)

    @classmethod
    def from_spec(cls, spec: dict, grid=None) -> "GridLaw":
        """Build from ``{"family": "normal"|"logistic"|"grid"|"mixture", ...}``."""
        fam = spec.get("family", "normal")
        if fam == "normal":
            return cls.normal(spec.get("loc", 0.0), spec.get("scale", 1.0), grid)
        if fam == "logistic":
            return cls.logistic(spec.get("loc", 0.0), spec.get("scale", 1.0), grid)
        if fam == "grid":
            return cls(spec["support"], spec["probs"])
        if fam == "mixture":
            return cls.mixture([cls.from_spec(c, grid) for c in spec["components"]], spec["weights"])
        raise InvalidInputError(f"unknown latent family {fam!r}")


def oracle_quantile(law: GridLaw, tau) -> np.ndarray:
    """Generalized inverse ``Q(tau) = inf{q : F(q) >= tau}`` for ``0 < tau <= 1``."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau <= 0) or np.any(tau > 1):
        raise InvalidInputError("tau must lie in (0, 1]")
    idx = np.searchsorted(law.cum, tau, side="left")
    return law.support[np.minimum(idx, law.support.size - 1)]


@dataclass(frozen=True, eq=False)
class LatentScenario:
    """Latent laws, thresholds and threshold shifts for two groups.

    Y's thresholds are ``thresholds + shifts``.  ``assumption`` is ``"common"``
    (all shifts equal), ``"nonpositive"`` (every shift <= 0) or ``"none"``
    (negative controls).
    """

    law_x: GridLaw
    law_y: GridLaw
    thresholds: np.ndarray
    shifts: np.ndarray
    n_x: int = 1000
    n_y: int = 1000
    reps: int = 1000
    seed: int = 0
    assumption: str = "none"

    def __post_init__(self):
        g = np.asarray(self.thresholds, dtype=float)
        d = np.broadcast_to(np.asarray(self.shifts, dtype=float), g.shape).copy()
        object.__setattr__(self, "thresholds", g)
        object.__setattr__(self, "shifts", d)
        if g.size < 1 or np.any(np.diff(g) <= 0) or np.any(np.diff(g + d) <= 0):
            raise InvalidInputError("thresholds must be strictly increasing for both groups")
        if self.assumption == "common" and not np.all(d == d[0]):
            raise InvalidInputError("common-shift scenario needs equal shifts")
        if self.assumption == "nonpositive" and np.any(d > 0):
            raise InvalidInputError("nonpositive-shift scenario has a positive shift")

    @property
    def J(self) -> int:
        return self.thresholds.size + 1

    def true_cdfs(self):
        """Population ordinal CDFs ``(F_X, F_Y)`` as arrays of length J-1."""
        fx = self.law_x.cdf(self.thresholds)
        fy = self.law_y.cdf(self.thresholds + self.shifts)
        return fx, fy

    def true_ordinal(self):
        fx, fy = self.true_cdfs()
        return (OrdinalCdf.from_values(fx, self.n_x, "X"), OrdinalCdf.from_values(fy, self.n_y, "Y"))

    def sample(self, rng: np.random.Generator):
        """One draw of ordinal data for both groups as :class:`OrdinalSample` s."""
        fx, fy = self.true_cdfs()
        px = np.diff(np.append(fx, 1.0), prepend=0.0)
        py = np.diff(np.append(fy, 1.0), prepend=0.0)
        cx = rng.multinomial(self.n_x, np.clip(px, 0, None) / np.clip(px, 0, None).sum())
        cy = rng.multinomial(self.n_y, np.clip(py, 0, None) / np.clip(py, 0, None).sum())
        return (OrdinalSample(cx, n_raw=self.n_x, label="X"), OrdinalSample(cy, n_raw=self.n_y, label="Y"))


def _grid_points(lo: float, hi: float, step: float) -> np.ndarray:
    """Grid multiples of ``step`` inside ``(lo, hi]`` plus the right endpoint."""
    i0 = math.floor(lo / step) + 1
    i1 = math.floor(hi / step)
    pts = np.arange(i0, i1 + 1) * step
    pts = pts[(pts > lo) & (pts <= hi)]
    return np.append(pts, hi)


def between_violations(scn: LatentScenario, step: float = 0.001) -> int:
    """Grid points of the between-group set where ``Q_X(tau) > Q_Y(tau)`` fails."""
    cx, cy = scn.true_ordinal()
    bad = 0
    for lo, hi in between_set(cx, cy):
        tau = _grid_points(lo, hi, step)
        bad += int(np.sum(~(oracle_quantile(scn.law_x, tau) > oracle_quantile(scn.law_y, tau))))
    return bad


def within_violations(scn: LatentScenario, step: float = 0.001) -> int:
    """Grid pairs of the within-group set where X's interquantile range is not smaller."""
    cx, cy = scn.true_ordinal()
    bad = 0
    for (a, b), (c, d) in within_all_set(cx, cy):
        t1 = _grid_points(a, b, step)
        t2 = _grid_points(c, d, step)
        qx1, qx2 = oracle_quantile(scn.law_x, t1), oracle_quantile(scn.law_x, t2)
        qy1, qy2 = oracle_quantile(scn.law_y, t1), oracle_quantile(scn.law_y, t2)
        iqr_x = qx2[None, :] - qx1[:, None]
        iqr_y = qy2[None, :] - qy1[:, None]
        bad += int(np.sum(~(iqr_x < iqr_y)))
    return bad


def verify_identification(scn: LatentScenario, step: float = 0.001, which: Optional[str] = None) -> int:
    """Violation count of the identification claim matching the scenario.

    ``which`` is ``"between"`` or ``"within"``; by default it follows the
    scenario's assumption (nonpositive shifts -> between, common -> within).
    """
    if which is None:
        which = {"nonpositive": "between", "common": "within"}.get(scn.assumption)
    if which == "between":
        return between_violations(scn, step)
    if which == "within":
        return within_violations(scn, step)
    raise InvalidInputError("cannot infer which identification result to check")


def _random_law(rng: np.random.Generator, points: int) -> GridLaw:
    support = np.sort(rng.choice(np.arange(-3000, 3001), size=points, replace=False)) / 1000.0
    probs = rng.dirichlet(np.full(points, rng.uniform(0.3, 3.0)))
    return GridLaw(support, probs)


def _random_thresholds(rng, J):
    return np.sort(rng.choice(np.arange(-2000, 2001), size=J - 1, replace=False)) / 1000.0


def random_between_scenario(rng: np.random.Generator, points: int = 200) -> LatentScenario:
    """Random laws with every Y threshold weakly below X's.

    X* is a random law and Y* a perturbed, shifted-down copy of it so the
    identified set is usually nonempty.
    """
    J = int(rng.integers(2, 8))
    law_x = _random_law(rng, points)
    shift = rng.uniform(0.0, 0.6)
    noise = rng.dirichlet(np.full(points, 5.0))
    law_y = GridLaw(law_x.support - shift, 0.7 * law_x.probs + 0.3 * noise)
    g = _random_thresholds(rng, J)
    while True:
        d = -rng.uniform(0.0, 0.3, size=J - 1) * (rng.random(J - 1) < 0.7)
        if np.all(np.diff(g + d) > 0):
            break
    return LatentScenario(law_x, law_y, g, d, assumption="nonpositive")


def random_within_scenario(rng: np.random.Generator, points: int = 200, max_tries: int = 1000) -> LatentScenario:
    """Random laws with a common threshold shift and at least one CDF crossing."""
    for _ in range(max_tries):
        J = int(rng.integers(3, 8))
        law_x = _random_law(rng, points)
        spread = rng.uniform(1.2, 3.0)
        center = rng.uniform(-0.5, 0.5)
        law_y = GridLaw(center + spread * (law_x.support - center), law_x.probs[::-1].copy() * 0.3 + 0.7 * law_x.probs)
        g = _random_thresholds(rng, J)
        d = np.full(J - 1, rng.uniform(-0.3, 0.3))
        scn = LatentScenario(law_x, law_y, g, d, assumption="common")
        cx, cy = scn.true_ordinal()
        if not within_all_set(cx, cy).is_empty():
            return scn
    raise RuntimeError("could not generate a crossing scenario")


def negative_control_between() -> LatentScenario:
    """Identical latent laws but Y thresholds shifted up: the set is nonempty
    even though the latent quantiles coincide."""
    law = GridLaw.normal(0.0, 1.0)
    return LatentScenario(law, law, np.array([-0.5, 0.5]), np.array([0.3, 0.3]), assumption="none")


def negative_control_within() -> LatentScenario:
    """Identical latent laws with unequal shifts that mimic a crossing."""
    law = GridLaw.normal(0.0, 1.0)
    return LatentScenario(law, law, np.array([-0.5, 0.5]), np.array([0.3, -0.3]), assumption="none")


@dataclass
class StudyResult:
    rate: float
    mc_se: float
    reps: int
    count: int
    details: dict = field(default_factory=dict)


def _result(hits: int, reps: int, **details) -> StudyResult:
    p = hits / reps
    return StudyResult(p, math.sqrt(p * (1 - p) / reps), reps, hits, details)


def coverage_study(
    scn: LatentScenario, method: str, alpha: float = 0.10, draws: int = 20000,
    pair: Optional[tuple] = None,
) -> StudyResult:
    """Fraction of replications in which the inner set lies inside the true set."""
    if scn.reps < 500:
        raise InvalidInputError("coverage studies need at least 500 replications")
    cx, cy = scn.true_ordinal()
    if method == "between":
        truth = between_set(cx, cy)
    elif method == "within-fixed":
        if pair is None:
            raise InvalidInputError("within-fixed needs a category pair")
        t1, t2 = within_pair_sets(cx, cy, *pair)
        truth = RectSet.product(t1, t2)
    elif method == "within-all":
        truth = within_all_set(cx, cy)
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    children = np.random.SeedSequence(scn.seed).spawn(scn.reps)
    covered = empty = 0
    for r, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        sx, sy = scn.sample(rng)
        ex, ey = estimate_cdf(sx), estimate_cdf(sy)
        cfg = CritValConfig(draws=draws, seed=int(rng.integers(2**63)))
        if method == "between":
            est, _ = cs_between(ex, ey, alpha, cfg)
            ok = qs_subset(est, truth)
        elif method == "within-fixed":
            est, _ = cs_within_fixed(ex, ey, pair[0], pair[1], alpha, cfg)
            ok = rect_subset(est, truth)
        else:
            est, _ = cs_within_all(ex, ey, alpha, cfg)
            ok = rect_subset(est, truth)
        covered += ok
        empty += est.is_empty()
    return _result(covered, scn.reps, empty_fraction=empty / scn.reps, method=method, alpha=alpha)


def size_study(
    F_x: Sequence[float], F_y: Sequence[float], test: str, alpha: float = 0.05,
    n_x: int = 1000, n_y: int = 1000, reps: int = 2000, seed: int = 0, draws: int = 20000,
) -> StudyResult:
    """Rejection frequency of ``test`` when data come from the given ordinal CDFs."""
    px = np.diff(np.append(F_x, 1.0), prepend=0.0)
    py = np.diff(np.append(F_y, 1.0), prepend=0.0)
    children = np.random.SeedSequence(seed).spawn(reps)
    rejects = 0
    for ss in children:
        rng = np.random.default_rng(ss)
        ex = estimate_cdf(OrdinalSample(rng.multinomial(n_x, px), n_raw=n_x))
        ey = estimate_cdf(OrdinalSample(rng.multinomial(n_y, py), n_raw=n_y))
        cfg = CritValConfig(draws=draws, seed=int(rng.integers(2**63)))
        if test == "nonsd1":
            rep = test_nonsd1(ex, ey, alpha)
        elif test == "sd1":
            rep = test_sd1(ex, ey, alpha, cfg)
        elif test == "sc":
            rep = test_sc(ex, ey, alpha, cfg)
        else:
            raise InvalidInputError(f"unknown test {test!r}")
        rejects += rep.reject
    return _result(rejects, reps, test=test, alpha=alpha)
