"""CSV ingestion, JSON report assembly and plot-data export."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .core import InvalidInputError, OrdinalCdf, OrdinalSample

SCHEMA_VERSION = "1.0"
INTERVAL_NOTE = "intervals are half-open (lo, hi]; rectangles are (lo1, hi1] x (lo2, hi2]"


@dataclass
class IngestReport:
    rows_read: int = 0
    rows_used: int = 0
    rows_skipped: int = 0
    skipped_reasons: dict = field(default_factory=dict)
    categories: list = field(default_factory=list)

    def skip(self, reason: str):
        self.rows_skipped += 1
        self.skipped_reasons[reason] = self.skipped_reasons.get(reason, 0) + 1


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames:
            raise InvalidInputError(f"{path}: missing header row")
        fields = [f.strip() for f in reader.fieldnames]
        rows = [{k.strip(): (v or "").strip() for k, v in row.items() if k is not None} for row in reader]
    return fields, rows


def _parse_category(text: str) -> Optional[int]:
    try:
        v = float(text)
    except ValueError:
        return None
    if not math.isfinite(v) or v != int(v):
        return None
    return int(v)


def ingest_csv(
    path,
    group_col: str,
    x_label: str,
    y_label: str,
    category_col: str,
    weight_col: Optional[str] = None,
    category_range: Optional[Tuple[int, int]] = None,
) -> Tuple[OrdinalSample, OrdinalSample, IngestReport]:
    """Tabulate raw rows into one weighted sample per group.

    Categories are integers; with ``category_range=(lo, hi)`` they must lie in
    that range, otherwise the observed min..max is used.  Categories are then
    relabelled ``1..J``.  Rows with an unparseable or missing category are
    skipped and counted; a nonnumeric weight is an error.
    """
    fields, rows = _read_rows(path)
    for col in filter(None, (group_col, category_col, weight_col)):
        if col not in fields:
            raise InvalidInputError(f"{path}: missing column {col!r}")
    rep = IngestReport()
    acc = {x_label: [], y_label: []}
    for row in rows:
        rep.rows_read += 1
        g = row.get(group_col, "")
        if g not in acc:
            rep.skip("other_group")
            continue
        cat = _parse_category(row.get(category_col, ""))
        if cat is None:
            rep.skip("bad_category")
            continue
        if category_range is not None and not category_range[0] <= cat <= category_range[1]:
            raise InvalidInputError(f"{path}: category {cat} outside declared range {category_range}")
        w = 1.0
        if weight_col:
            raw = row.get(weight_col, "")
            try:
                w = float(raw)
            except ValueError:
                raise InvalidInputError(f"{path}: nonnumeric weight {raw!r}") from None
            if not math.isfinite(w) or w < 0:
                raise InvalidInputError(f"{path}: invalid weight {raw!r}")
        acc[g].append((cat, w))
        rep.rows_used += 1
    for label, obs in acc.items():
        if not obs:
            raise InvalidInputError(f"{path}: group {label!r} has no usable rows")
    if category_range is None:
        cats = [c for obs in acc.values() for c, _ in obs]
        lo, hi = min(cats), max(cats)
    else:
        lo, hi = category_range
    if hi - lo < 1:
        raise InvalidInputError("need at least two categories")
    rep.categories = list(range(lo, hi + 1))
    samples = []
    for label in (x_label, y_label):
        counts = np.zeros(hi - lo + 1)
        w2 = 0.0
        for c, w in acc[label]:
            counts[c - lo] += w
            w2 += w * w
        weighted = weight_col is not None
        samples.append(OrdinalSample(counts, n_raw=len(acc[label]), label=label, sum_w2=w2 if weighted else None))
    return samples[0], samples[1], rep


def ingest_table(path, n_x: Optional[int] = None, n_y: Optional[int] = None) -> Tuple[OrdinalSample, OrdinalSample]:
    """Read ``category,count_x,count_y`` rows (one per category, in order)."""
    fields, rows = _read_rows(path)
    for col in ("category", "count_x", "count_y"):
        if col not in fields:
            raise InvalidInputError(f"{path}: tabulated input needs column {col!r}")
    try:
        cats = [int(r["category"]) for r in rows]
        cx = np.array([float(r["count_x"]) for r in rows])
        cy = np.array([float(r["count_y"]) for r in rows])
    except ValueError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None
    if not cats or cats != list(range(cats[0], cats[0] + len(cats))):
        raise InvalidInputError(f"{path}: categories must be consecutive integers")
    return (OrdinalSample(cx, n_raw=n_x, label="X"), OrdinalSample(cy, n_raw=n_y, label="Y"))


def write_table(path, sx: OrdinalSample, sy: OrdinalSample) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["category", "count_x", "count_y"])
        for j, (a, b) in enumerate(zip(sx.counts, sy.counts), start=1):
            w.writerow([j, repr(float(a)), repr(float(b))])


def cdf_table(cx: OrdinalCdf, cy: OrdinalCdf) -> list:
    return [
        {"category": j, "F_x": float(a), "F_y": float(b)}
        for j, (a, b) in enumerate(zip(cx.full(), cy.full()), start=1)
    ]


def cdf_tsv(cx: OrdinalCdf, cy: OrdinalCdf) -> str:
    """Step-function CDF values for plotting: ``category<TAB>F_X<TAB>F_Y``."""
    buf = io.StringIO()
    buf.write("category\tF_X\tF_Y\n")
    for row in cdf_table(cx, cy):
        buf.write(f"{row['category']}\t{row['F_x']!r}\t{row['F_y']!r}\n")
    return buf.getvalue()


def to_jsonable(obj):
    """Recursively convert numpy values; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if math.isnan(f):
            return None
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(doc) -> str:
    return json.dumps(to_jsonable(doc), indent=2, sort_keys=False, ensure_ascii=False)


def result_payload(doc: dict) -> str:
    """The deterministic part of a report: everything except provenance."""
    return dumps({k: v for k, v in doc.items() if k != "provenance"})
