"""Sets of quantile indices identified from a pair of ordinal CDFs.

``between_set`` gives the quantile indices at which the latent X quantile
exceeds the latent Y quantile, valid when every Y threshold is weakly below
the matching X threshold.  The within-group sets hold quantile-index pairs
whose latent interquantile range is smaller for X than for Y, valid when the
two groups' thresholds differ by a common constant.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .core import InvalidInputError, OrdinalCdf, check_same_J
from .intervals import QuantileSet, RectSet


def category_intervals(lower, upper) -> list:
    """``(lower[j], upper[j]]`` for every ``j`` with ``lower[j] < upper[j]``, else ``None``."""
    return [(float(a), float(b)) if a < b else None for a, b in zip(lower, upper)]


def between_set(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> QuantileSet:
    """Union over ``j`` of ``(F_X(j), F_Y(j)]`` where ``F_X(j) < F_Y(j)``.

    Swap the arguments to get the set where Y's latent quantile is larger.
    """
    check_same_J(cdfX, cdfY)
    return QuantileSet(iv for iv in category_intervals(cdfX.F, cdfY.F) if iv)


def within_pair_sets(
    cdfX: OrdinalCdf, cdfY: OrdinalCdf, j: int, k: int
) -> Tuple[QuantileSet, QuantileSet]:
    """Index sets ``(T1, T2)`` for the category pair ``j < k`` (1-based).

    Nonempty only when X's CDF is below Y's at ``j`` and above it at ``k``;
    otherwise both sets are empty.  For the reverse orientation swap X and Y.
    """
    check_same_J(cdfX, cdfY)
    if not (1 <= j < k <= cdfX.J - 1):
        raise InvalidInputError(f"need 1 <= j < k <= {cdfX.J - 1}; got j={j}, k={k}")
    fxj, fyj = cdfX.F[j - 1], cdfY.F[j - 1]
    fxk, fyk = cdfX.F[k - 1], cdfY.F[k - 1]
    if fxj < fyj and fyk < fxk:
        return QuantileSet([(fxj, fyj)]), QuantileSet([(fyk, fxk)])
    return QuantileSet(), QuantileSet()


def single_crossing(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> Optional[int]:
    """Category ``m`` at which X's CDF crosses Y's once from below, or ``None``.

    Requires ``F_X(j) < F_Y(j)`` for ``j <= m`` and ``F_X(j) > F_Y(j)`` for
    ``m < j <= J-1``, all strict, with ``1 <= m <= J-2``.
    """
    check_same_J(cdfX, cdfY)
    below = cdfX.F < cdfY.F
    above = cdfX.F > cdfY.F
    for m in range(1, cdfX.J - 1):
        if below[:m].all() and above[m:].all():
            return m
    return None


def within_all_set(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> RectSet:
    """Union over ``j < k`` of ``T_Xj x T_Yk``."""
    check_same_J(cdfX, cdfY)
    tx = category_intervals(cdfX.F, cdfY.F)
    ty = category_intervals(cdfY.F, cdfX.F)
    return rects_from_category_intervals(tx, ty)


def rects_from_category_intervals(tx, ty) -> RectSet:
    rects = []
    for j, a in enumerate(tx):
        if a is None:
            continue
        for b in ty[j + 1 :]:
            if b is not None:
                rects.append((a, b))
    return RectSet(rects)


def single_crossing_sets(cdfX: OrdinalCdf, cdfY: OrdinalCdf) -> Optional[Tuple[QuantileSet, QuantileSet]]:
    """The pair ``(T1, T2)`` implied by a single crossing, or ``None``."""
    m = single_crossing(cdfX, cdfY)
    if m is None:
        return None
    t1 = QuantileSet(zip(cdfX.F[:m], cdfY.F[:m]))
    t2 = QuantileSet(zip(cdfY.F[m:], cdfX.F[m:]))
    return t1, t2
