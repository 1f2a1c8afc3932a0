"""Finite unions of half-open intervals ``(lo, hi]`` and of rectangles.

Endpoints are compared exactly; no tolerance is applied anywhere.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Tuple

Interval = Tuple[float, float]
Rect = Tuple[Interval, Interval]


def _normalize(intervals: Iterable[Interval]) -> tuple:
    out = []
    for lo, hi in sorted((float(a), float(b)) for a, b in intervals if a < b):
        if out and lo <= out[-1][1]:
            # (a,b] and (b,c] share no point but their union is (a,c]
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


class QuantileSet:
    """A finite union of intervals ``(lo, hi]`` with ``0 <= lo < hi <= 1``."""

    __slots__ = ("_intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        self._intervals = _normalize(intervals)

    @classmethod
    def empty(cls) -> "QuantileSet":
        return cls()

    @property
    def intervals(self) -> tuple:
        return self._intervals

    def is_empty(self) -> bool:
        return not self._intervals

    def __bool__(self):
        return not self.is_empty()

    def __len__(self):
        return len(self._intervals)

    def __iter__(self):
        return iter(self._intervals)

    def __eq__(self, other):
        if not isinstance(other, QuantileSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self):
        return hash(self._intervals)

    def __repr__(self):
        return f"QuantileSet({list(self._intervals)!r})"

    def __or__(self, other: "QuantileSet") -> "QuantileSet":
        return qs_union(self, other)

    def __le__(self, other: "QuantileSet") -> bool:
        return qs_subset(self, other)

    def __contains__(self, tau: float) -> bool:
        return qs_contains(self, tau)

    @property
    def length(self) -> float:
        return sum(hi - lo for lo, hi in self._intervals)

    def intersection(self, other: "QuantileSet") -> "QuantileSet":
        out = []
        for (a, b), (c, d) in product(self._intervals, other._intervals):
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                out.append((lo, hi))
        return QuantileSet(out)

    def render(self, digits: int = 3) -> str:
        if self.is_empty():
            return "∅"
        return " ∪ ".join(f"({lo:.{digits}f}, {hi:.{digits}f}]" for lo, hi in self._intervals)

    def to_list(self) -> list:
        return [[lo, hi] for lo, hi in self._intervals]


def qs_union(a: QuantileSet, b: QuantileSet) -> QuantileSet:
    return QuantileSet(a.intervals + b.intervals)


def qs_contains(s: QuantileSet, tau: float) -> bool:
    return any(lo < tau <= hi for lo, hi in s.intervals)


def qs_subset(a: QuantileSet, b: QuantileSet) -> bool:
    """True iff every point of ``a`` lies in ``b``.

    Because ``b`` is normalized, each interval of ``a`` must fit inside a
    single interval of ``b``.
    """
    return all(any(c <= lo and hi <= d for c, d in b.intervals) for lo, hi in a.intervals)


class RectSet:
    """A finite union of rectangles ``(lo1, hi1] x (lo2, hi2]``.

    Empty rectangles are dropped and any rectangle contained in another is
    removed, so two sets built from the same pieces compare equal.
    """

    __slots__ = ("_rects",)

    def __init__(self, rects: Iterable[Rect] = ()):
        cleaned = set()
        for (a, b), (c, d) in rects:
            if a < b and c < d:
                cleaned.add(((float(a), float(b)), (float(c), float(d))))
        kept = [
            r for r in cleaned
            if not any(o != r and _rect_within(r, o) for o in cleaned)
        ]
        self._rects = tuple(sorted(kept))

    @classmethod
    def product(cls, s1: QuantileSet, s2: QuantileSet) -> "RectSet":
        return cls(product(s1.intervals, s2.intervals))

    @property
    def rects(self) -> tuple:
        return self._rects

    def is_empty(self) -> bool:
        return not self._rects

    def __bool__(self):
        return not self.is_empty()

    def __len__(self):
        return len(self._rects)

    def __iter__(self):
        return iter(self._rects)

    def __eq__(self, other):
        if not isinstance(other, RectSet):
            return NotImplemented
        return self._rects == other._rects

    def __hash__(self):
        return hash(self._rects)

    def __repr__(self):
        return f"RectSet({list(self._rects)!r})"

    def __or__(self, other: "RectSet") -> "RectSet":
        return RectSet(self._rects + other._rects)

    def __le__(self, other: "RectSet") -> bool:
        return rect_subset(self, other)

    def contains(self, tau1: float, tau2: float) -> bool:
        return any(a < tau1 <= b and c < tau2 <= d for (a, b), (c, d) in self._rects)

    def same_region(self, other: "RectSet") -> bool:
        """Set equality as point sets, independent of how rectangles are cut."""
        return rect_subset(self, other) and rect_subset(other, self)

    @property
    def area(self) -> float:
        xs, ys = _breakpoints(self._rects)
        total = 0.0
        for x0, x1 in zip(xs, xs[1:]):
            for y0, y1 in zip(ys, ys[1:]):
                if _cell_covered(x0, x1, y0, y1, self._rects):
                    total += (x1 - x0) * (y1 - y0)
        return total

    def render(self, digits: int = 3) -> str:
        if self.is_empty():
            return "∅"
        return " ∪ ".join(
            f"({a:.{digits}f}, {b:.{digits}f}] × ({c:.{digits}f}, {d:.{digits}f}]"
            for (a, b), (c, d) in self._rects
        )

    def to_list(self) -> list:
        return [[[a, b], [c, d]] for (a, b), (c, d) in self._rects]


def _rect_within(r: Rect, o: Rect) -> bool:
    (a, b), (c, d) = r
    (e, f), (g, h) = o
    return e <= a and b <= f and g <= c and d <= h


def _breakpoints(rects) -> tuple:
    xs = sorted({v for (a, b), _ in rects for v in (a, b)})
    ys = sorted({v for _, (c, d) in rects for v in (c, d)})
    return xs, ys


def _cell_covered(x0, x1, y0, y1, rects) -> bool:
    return any(a <= x0 and x1 <= b and c <= y0 and y1 <= d for (a, b), (c, d) in rects)


def rect_subset(a: RectSet, b: RectSet) -> bool:
    """True iff the union of ``a`` lies inside the union of ``b``.

    Both sets are cut along every endpoint of either set; each resulting
    cell is then either wholly inside a rectangle or disjoint from it.
    """
    if a.is_empty():
        return True
    if b.is_empty():
        return False
    xs, ys = _breakpoints(a.rects + b.rects)
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            if _cell_covered(x0, x1, y0, y1, a.rects) and not _cell_covered(x0, x1, y0, y1, b.rects):
                return False
    return True
