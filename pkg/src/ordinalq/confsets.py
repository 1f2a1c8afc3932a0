"""Inner confidence sets for the identified quantile-index sets.

Each set is built from joint confidence limits for the two ordinal CDFs.
With independent samples and each group's limits jointly covering with
probability sqrt(1 - alpha), the resulting set lies inside the true set
with asymptotic probability at least 1 - alpha.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core import InvalidInputError, OrdinalCdf, check_same_J
from .gausssim import CritValConfig, critvals_method1, critvals_method2, critvals_method3
from .identify import (
    between_set,
    category_intervals,
    rects_from_category_intervals,
    within_all_set,
    within_pair_sets,
)
from .intervals import QuantileSet, RectSet


class CSMethod(str, enum.Enum):
    BETWEEN = "between"
    WITHIN_FIXED = "within-fixed"
    WITHIN_ALL = "within-all"


class EmptyReason(str, enum.Enum):
    NO_ORDINAL_EVIDENCE = "no_ordinal_evidence"
    LIMITS_CROSSED = "limits_crossed"


@dataclass(frozen=True)
class ConfLimits:
    """Confidence limits per category (0-based arrays of length J-1).

    Limits are left unclamped; ``clamped`` is for display only.
    """

    method: CSMethod
    alpha: float
    tilde_alpha: float
    tilde_beta: float
    cxu: Optional[np.ndarray] = None
    cxl: Optional[np.ndarray] = None
    cyu: Optional[np.ndarray] = None
    cyl: Optional[np.ndarray] = None
    pair: Optional[Tuple[int, int]] = None
    empty_reason: Optional[EmptyReason] = None
    note: str = ""

    def clamped(self, name: str) -> Optional[np.ndarray]:
        v = getattr(self, name)
        return None if v is None else np.clip(v, 0.0, 1.0)


def _empty_reason(result_empty: bool, estimate_empty: bool) -> Optional[EmptyReason]:
    if not result_empty:
        return None
    return EmptyReason.NO_ORDINAL_EVIDENCE if estimate_empty else EmptyReason.LIMITS_CROSSED


def _note(tilde_alpha: float, tilde_beta: float) -> str:
    if max(tilde_alpha, tilde_beta) >= 0.5:
        return "pointwise level >= 0.5: limits are not conservative and may invert"
    return ""


def cs_between(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float = 0.05, cfg: Optional[CritValConfig] = None
) -> Tuple[QuantileSet, ConfLimits]:
    """Inner confidence set for the indices where X's latent quantile is larger."""
    check_same_J(cdfX, cdfY)
    cfg = cfg or CritValConfig()
    cv = critvals_method1(cdfX, cdfY, alpha, cfg)
    cxu = cdfX.F + cv.z_x * cdfX.se
    cyl = cdfY.F - cv.z_y * cdfY.se
    cs = QuantileSet(iv for iv in category_intervals(cxu, cyl) if iv)
    limits = ConfLimits(
        CSMethod.BETWEEN, alpha, cv.tilde_alpha, cv.tilde_beta, cxu=cxu, cyl=cyl,
        empty_reason=_empty_reason(cs.is_empty(), between_set(cdfX, cdfY).is_empty()),
        note=_note(cv.tilde_alpha, cv.tilde_beta),
    )
    return cs, limits


def cs_within_fixed(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, j: int, k: int,
    alpha: float = 0.05, cfg: Optional[CritValConfig] = None,
) -> Tuple[RectSet, ConfLimits]:
    """Inner confidence set for ``T_Xj x T_Yk`` at a prespecified pair ``j < k``."""
    check_same_J(cdfX, cdfY)
    if not (1 <= j < k <= cdfX.J - 1):
        raise InvalidInputError(f"need 1 <= j < k <= {cdfX.J - 1}; got j={j}, k={k}")
    cfg = cfg or CritValConfig()
    cv = critvals_method2(cdfX, cdfY, j, k, alpha, cfg)
    nan = np.full(cdfX.J - 1, np.nan)
    cxu, cyl, cxl, cyu = nan.copy(), nan.copy(), nan.copy(), nan.copy()
    cxu[j - 1] = cdfX.F[j - 1] + cv.z_x * cdfX.se[j - 1]
    cyl[j - 1] = cdfY.F[j - 1] - cv.z_y * cdfY.se[j - 1]
    cxl[k - 1] = cdfX.F[k - 1] - cv.z_x * cdfX.se[k - 1]
    cyu[k - 1] = cdfY.F[k - 1] + cv.z_y * cdfY.se[k - 1]
    if cxu[j - 1] < cyl[j - 1] and cyu[k - 1] < cxl[k - 1]:
        rs = RectSet([((cxu[j - 1], cyl[j - 1]), (cyu[k - 1], cxl[k - 1]))])
    else:
        rs = RectSet()
    t1, _ = within_pair_sets(cdfX, cdfY, j, k)
    limits = ConfLimits(
        CSMethod.WITHIN_FIXED, alpha, cv.tilde_alpha, cv.tilde_beta,
        cxu=cxu, cxl=cxl, cyu=cyu, cyl=cyl, pair=(j, k),
        empty_reason=_empty_reason(rs.is_empty(), t1.is_empty()),
        note=_note(cv.tilde_alpha, cv.tilde_beta),
    )
    return rs, limits


def cs_within_all(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, alpha: float = 0.05, cfg: Optional[CritValConfig] = None
) -> Tuple[RectSet, ConfLimits]:
    """Inner confidence set for the union over ``j < k`` of ``T_Xj x T_Yk``.

    Uses two-sided limits from the max-|t| distribution, so one set of limits
    serves every category pair.
    """
    check_same_J(cdfX, cdfY)
    cfg = cfg or CritValConfig()
    cv = critvals_method3(cdfX, cdfY, alpha, cfg)
    cxu = cdfX.F + cv.z_x * cdfX.se
    cxl = cdfX.F - cv.z_x * cdfX.se
    cyu = cdfY.F + cv.z_y * cdfY.se
    cyl = cdfY.F - cv.z_y * cdfY.se
    rs = rects_from_category_intervals(category_intervals(cxu, cyl), category_intervals(cyu, cxl))
    limits = ConfLimits(
        CSMethod.WITHIN_ALL, alpha, cv.tilde_alpha, cv.tilde_beta,
        cxu=cxu, cxl=cxl, cyu=cyu, cyl=cyl,
        empty_reason=_empty_reason(rs.is_empty(), within_all_set(cdfX, cdfY).is_empty()),
        note=_note(cv.tilde_alpha, cv.tilde_beta),
    )
    return rs, limits
