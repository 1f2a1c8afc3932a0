"""Ordinal samples, weighted empirical CDFs and their asymptotic covariance."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

PSD_TOL = 1e-10


class InvalidInputError(ValueError):
    """Raised when data or arguments violate an operation's preconditions."""


@dataclass(frozen=True)
class OrdinalSample:
    """Tabulated category totals for one group.

    ``counts[j-1]`` is the (possibly weighted) total for category ``j``.
    ``sum_w2`` holds the sum of squared unit weights when the sample was built
    from weighted rows; ``None`` means every observation had weight one.
    """

    counts: np.ndarray
    n_raw: Optional[int] = None
    label: str = ""
    sum_w2: Optional[float] = None

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float)
        if counts.ndim != 1 or counts.size < 2:
            raise InvalidInputError("an ordinal sample needs at least two categories")
        if not np.all(np.isfinite(counts)) or np.any(counts < 0):
            raise InvalidInputError("category counts must be finite and nonnegative")
        if counts.sum() <= 0:
            raise InvalidInputError("total weight must be positive")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        n_raw = self.n_raw
        if n_raw is None:
            n_raw = max(int(round(counts.sum())), int(np.count_nonzero(counts)))
        n_raw = int(n_raw)
        if n_raw < np.count_nonzero(counts):
            raise InvalidInputError(
                f"n_raw={n_raw} is smaller than the number of occupied categories"
            )
        object.__setattr__(self, "n_raw", n_raw)
        if self.sum_w2 is not None and not self.sum_w2 > 0:
            raise InvalidInputError("sum of squared weights must be positive")

    @property
    def J(self) -> int:
        return int(self.counts.size)

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    @property
    def effective_n(self) -> float:
        """Kish effective size for weighted samples, raw count otherwise."""
        if self.sum_w2 is None:
            return float(self.n_raw)
        return self.total**2 / self.sum_w2


def multinomial_cdf_covariance(F: Sequence[float]) -> np.ndarray:
    """Asymptotic covariance of sqrt(n)(Fhat - F) under iid sampling.

    Entry ``(j, k)`` is ``F(min(j, k)) * (1 - F(max(j, k)))``.
    """
    F = np.asarray(F, dtype=float)
    lo = np.minimum.outer(F, F)
    hi = np.maximum.outer(F, F)
    return lo * (1.0 - hi)


@dataclass(frozen=True)
class OrdinalCdf:
    """Ordinal CDF values ``F(1..J-1)`` with effective size and covariance.

    ``Sigma`` is the covariance of the sqrt(n)-scaled estimation error, so the
    standard error of ``F[j]`` is ``sqrt(Sigma[j, j] / n)``.
    """

    F: np.ndarray
    n: float
    Sigma: np.ndarray = field(default=None)
    label: str = ""

    def __post_init__(self):
        F = np.asarray(self.F, dtype=float)
        if F.ndim != 1 or F.size < 1:
            raise InvalidInputError("an ordinal CDF needs at least one interior value")
        if np.any(F < 0) or np.any(F > 1) or np.any(np.diff(F) < 0):
            raise InvalidInputError("CDF values must be nondecreasing within [0, 1]")
        if not self.n > 0:
            raise InvalidInputError("sample size must be positive")
        Sigma = multinomial_cdf_covariance(F) if self.Sigma is None else np.asarray(self.Sigma, dtype=float)
        if Sigma.shape != (F.size, F.size):
            raise InvalidInputError("covariance shape does not match the CDF")
        if not np.allclose(Sigma, Sigma.T, rtol=0, atol=PSD_TOL):
            raise InvalidInputError("covariance must be symmetric")
        if np.linalg.eigvalsh(Sigma).min() < -PSD_TOL:
            raise InvalidInputError("covariance is not positive semidefinite")
        F.setflags(write=False)
        Sigma.setflags(write=False)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "Sigma", Sigma)
        object.__setattr__(self, "n", float(self.n))

    @classmethod
    def from_values(cls, F: Sequence[float], n: float, label: str = "") -> "OrdinalCdf":
        """Build from known CDF values, using the iid covariance formula."""
        return cls(F=np.asarray(F, dtype=float), n=n, label=label)

    @property
    def J(self) -> int:
        return int(self.F.size) + 1

    @property
    def se(self) -> np.ndarray:
        """Standard errors ``sqrt(Sigma_jj / n)``."""
        return np.sqrt(np.diag(self.Sigma) / self.n)

    def full(self) -> np.ndarray:
        """CDF values including the implicit ``F(J) = 1``."""
        return np.append(self.F, 1.0)

    def probabilities(self) -> np.ndarray:
        return np.diff(self.full(), prepend=0.0)


def estimate_cdf(sample: OrdinalSample) -> OrdinalCdf:
    """Weighted empirical ordinal CDF of ``sample``."""
    total = sample.total
    if total <= 0:
        raise InvalidInputError("total weight must be positive")
    F = np.cumsum(sample.counts)[:-1] / total
    # cumulative rounding can push the last entries a hair past 1
    F = np.clip(F, 0.0, 1.0)
    return OrdinalCdf(F=F, n=sample.effective_n, label=sample.label)


@dataclass(frozen=True)
class MergeSpec:
    """Ordered, contiguous, 1-based inclusive category ranges."""

    groups: tuple

    def __post_init__(self):
        groups = tuple((int(a), int(b)) for a, b in self.groups)
        if not groups:
            raise InvalidInputError("merge spec is empty")
        expected = 1
        for a, b in groups:
            if a != expected or b < a:
                raise InvalidInputError(
                    f"merge ranges must be contiguous and ordered; got {a}-{b} where {expected} was expected"
                )
            expected = b + 1
        object.__setattr__(self, "groups", groups)

    @property
    def J_in(self) -> int:
        return self.groups[-1][1]

    @classmethod
    def parse(cls, text: str) -> "MergeSpec":
        """Parse strings like ``"1-12,13,14,19-25"``."""
        groups = []
        for part in text.split(","):
            part = part.strip()
            m = re.fullmatch(r"(\d+)(?:\s*-\s*(\d+))?", part)
            if m is None:
                raise InvalidInputError(f"cannot parse merge range {part!r}")
            a = int(m.group(1))
            b = int(m.group(2)) if m.group(2) else a
            groups.append((a, b))
        return cls(tuple(groups))

    @classmethod
    def identity(cls, J: int) -> "MergeSpec":
        return cls(tuple((j, j) for j in range(1, J + 1)))

    def __str__(self):
        return ",".join(f"{a}" if a == b else f"{a}-{b}" for a, b in self.groups)


def merge_categories(sample: OrdinalSample, spec: MergeSpec) -> OrdinalSample:
    """Sum counts within each range of ``spec``; ``n_raw`` is unchanged."""
    if spec.J_in != sample.J:
        raise InvalidInputError(
            f"merge spec covers categories 1..{spec.J_in} but the sample has J={sample.J}"
        )
    counts = np.array([sample.counts[a - 1 : b].sum() for a, b in spec.groups])
    return OrdinalSample(counts=counts, n_raw=sample.n_raw, label=sample.label, sum_w2=sample.sum_w2)


def theta(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> np.ndarray:
    """CDF differences ``F_X(j) - F_Y(j)`` for ``j = 1..J-1``."""
    check_same_J(cdfX, cdfY)
    return cdfX.F - cdfY.F


def check_same_J(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> None:
    if cdfX.J != cdfY.J:
        raise InvalidInputError(f"category counts differ: J_X={cdfX.J}, J_Y={cdfY.J}")
