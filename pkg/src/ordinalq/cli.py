"""Command-line interface.

Exit codes: 0 when the analysis ran (whatever the statistical decision),
2 for invalid input or usage, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import platform
import sys
from typing import Optional

import numpy as np

from . import __version__
from .bayes import Event, PosteriorConfig, bayes_decision, kish_integer_counts, posterior_prob
from .confsets import cs_between, cs_within_all, cs_within_fixed
from .core import InvalidInputError, MergeSpec, OrdinalSample, estimate_cdf, merge_categories, theta
from .dataio import (
    INTERVAL_NOTE,
    SCHEMA_VERSION,
    cdf_table,
    cdf_tsv,
    dumps,
    file_digest,
    ingest_csv,
    ingest_table,
)
from .freqtests import test_nonsd1, test_sc, test_sd1
from .gausssim import CritValConfig, NumericalError
from .identify import between_set, single_crossing, within_all_set, within_pair_sets
from .intervals import RectSet

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

EVENT_ALIASES = {"sd1": Event.SD1_XY, "sc": Event.SC_XY}


def _add_input_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("input")
    src.add_argument("--table", help="tabulated counts: category,count_x,count_y")
    src.add_argument("--csv", help="raw rows, one observation per row")
    src.add_argument("--n-x", type=int, help="raw sample size of X for tabulated input")
    src.add_argument("--n-y", type=int, help="raw sample size of Y for tabulated input")
    src.add_argument("--group-col", default="group")
    src.add_argument("--category-col", default="category")
    src.add_argument("--weight-col")
    src.add_argument("--categories", help="declared category range, e.g. 1-25")
    src.add_argument("--x", help="group label treated as X")
    src.add_argument("--y", help="group label treated as Y")
    src.add_argument("--merge", help='category ranges to combine, e.g. "1-12,13,14,19-25"')
    out = p.add_argument_group("output")
    out.add_argument("--json", dest="json_out", help="write the JSON report here ('-' for stdout)")
    out.add_argument("--plot-tsv", help="write step-function CDF values (category, F_X, F_Y)")
    out.add_argument("--digits", type=int, default=3, help="decimals in the text rendering")


def _add_alpha(p, default=0.05):
    p.add_argument("--alpha", type=float, default=default)


def _add_sim(p, draws):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=draws)


def _add_pair(p):
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordinalq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="weighted ordinal CDFs and their differences")
    _add_input_args(p)

    p = sub.add_parser("identify", help="identified quantile-index sets")
    isub = p.add_subparsers(dest="which", required=True)
    for name in ("between", "within-fixed", "within-all"):
        q = isub.add_parser(name)
        _add_input_args(q)
        if name == "within-fixed":
            _add_pair(q)

    p = sub.add_parser("cs", help="inner confidence sets")
    csub = p.add_subparsers(dest="which", required=True)
    for name in ("between", "within-fixed", "within-all"):
        q = csub.add_parser(name)
        _add_input_args(q)
        _add_alpha(q, 0.05)
        _add_sim(q, 100000)
        if name == "within-fixed":
            _add_pair(q)

    p = sub.add_parser("test", help="frequentist dominance and crossing tests")
    tsub = p.add_subparsers(dest="which", required=True)
    for name in ("sd1", "nonsd1", "sc"):
        q = tsub.add_parser(name)
        _add_input_args(q)
        _add_alpha(q)
        if name != "nonsd1":
            _add_sim(q, 100000)

    p = sub.add_parser("bayes", help="posterior probability of an ordinal relationship")
    _add_input_args(p)
    _add_alpha(p)
    _add_sim(p, 10000)
    p.add_argument("--event", default="sd1", choices=["sd1", "sc"] + [e.value for e in Event])
    p.add_argument("--prior", default="uniform", choices=["uniform", "improper"])

    p = sub.add_parser("simulate", help="run a Monte Carlo scenario file")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--json", dest="json_out")
    p.add_argument("--tsv", help="write a one-line TSV summary")
    return parser


def _load(args):
    """Samples after ingestion and merging, plus an input description."""
    if bool(args.table) == bool(args.csv):
        raise InvalidInputError("give exactly one of --table or --csv")
    info = {}
    if args.table:
        sx, sy = ingest_table(args.table, args.n_x, args.n_y)
        info.update(source="table", path=args.table, digest=file_digest(args.table))
    else:
        if not (args.x and args.y):
            raise InvalidInputError("--csv needs --x and --y group labels")
        rng = None
        if args.categories:
            spec = MergeSpec.parse(args.categories)
            if len(spec.groups) != 1:
                raise InvalidInputError("--categories takes a single range like 1-25")
            rng = spec.groups[0]
        sx, sy, rep = ingest_csv(args.csv, args.group_col, args.x, args.y, args.category_col, args.weight_col, rng)
        info.update(
            source="csv", path=args.csv, digest=file_digest(args.csv), group_col=args.group_col,
            category_col=args.category_col, weight_col=args.weight_col,
            rows_read=rep.rows_read, rows_used=rep.rows_used, rows_skipped=rep.rows_skipped,
            skipped_reasons=rep.skipped_reasons, categories=rep.categories,
        )
    if sx.J != sy.J:
        raise InvalidInputError("X and Y have different numbers of categories")
    if args.merge:
        spec = MergeSpec.parse(args.merge)
        sx, sy = merge_categories(sx, spec), merge_categories(sy, spec)
        info["merge"] = str(spec)
    info["labels"] = {"x": args.x or sx.label or "X", "y": args.y or sy.label or "Y"}
    return sx, sy, info


def _base_doc(command: str, sx, sy, info) -> dict:
    cx, cy = estimate_cdf(sx), estimate_cdf(sy)
    table = cdf_table(cx, cy)
    for row, a, b in zip(table, sx.counts, sy.counts):
        row["count_x"], row["count_y"] = float(a), float(b)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": info,
        "samples": {
            "x": {"n_raw": sx.n_raw, "n_effective": cx.n, "total_weight": sx.total},
            "y": {"n_raw": sy.n_raw, "n_effective": cy.n, "total_weight": sy.total},
        },
        "cdf_table": table,
        "theta_hat": theta(cx, cy),
        "parameters": {},
        "result": {},
        "note": INTERVAL_NOTE,
    }
    return doc, cx, cy


def _limits_payload(lim) -> dict:
    out = {
        "method": lim.method, "alpha": lim.alpha,
        "tilde_alpha": lim.tilde_alpha, "tilde_beta": lim.tilde_beta,
        "empty_reason": lim.empty_reason, "note": lim.note,
    }
    for name in ("cxu", "cxl", "cyu", "cyl"):
        if getattr(lim, name) is not None:
            out[name] = getattr(lim, name)
    if lim.pair:
        out["pair"] = list(lim.pair)
    return out


def _render_limits(lim, digits) -> list:
    lines = [f"pointwise levels: tilde_alpha={lim.tilde_alpha:.4f} tilde_beta={lim.tilde_beta:.4f}"]
    if lim.empty_reason:
        lines.append(f"empty set: {lim.empty_reason.value}")
    if lim.note:
        lines.append(f"note: {lim.note}")
    return lines


def _run_estimate(args, doc, cx, cy):
    return [f"J = {cx.J}; n_X = {cx.n:g}, n_Y = {cy.n:g}",
            "F_X: " + " ".join(f"{v:.4f}" for v in cx.F),
            "F_Y: " + " ".join(f"{v:.4f}" for v in cy.F)]


def _run_identify(args, doc, cx, cy):
    d = args.digits
    res = doc["result"]
    m = single_crossing(cx, cy)
    res["single_crossing"] = m
    if args.which == "between":
        tx, ty = between_set(cx, cy), between_set(cy, cx)
        res.update(T_X=tx.to_list(), T_Y=ty.to_list())
        return [f"T_X = {tx.render(d)}", f"T_Y = {ty.render(d)}"]
    if args.which == "within-fixed":
        t1, t2 = within_pair_sets(cx, cy, args.j, args.k)
        doc["parameters"].update(j=args.j, k=args.k)
        res.update(T_1=t1.to_list(), T_2=t2.to_list())
        return [f"T_1 = {t1.render(d)}", f"T_2 = {t2.render(d)}"]
    rs = within_all_set(cx, cy)
    res["T"] = rs.to_list()
    lines = [f"T = {rs.render(d)}"]
    if m is not None:
        lines.append(f"single crossing at category {m}")
    return lines


def _run_cs(args, doc, cx, cy):
    cfg = CritValConfig(draws=args.draws, seed=args.seed)
    doc["parameters"].update(alpha=args.alpha, seed=args.seed, draws=args.draws)
    if args.which == "between":
        cs, lim = cs_between(cx, cy, args.alpha, cfg)
        doc["result"].update(T_X_hat=cs.to_list(), limits=_limits_payload(lim))
        return [f"{100 * (1 - args.alpha):g}% inner CS for T_X: {cs.render(args.digits)}"] + _render_limits(lim, args.digits)
    if args.which == "within-fixed":
        doc["parameters"].update(j=args.j, k=args.k)
        rs, lim = cs_within_fixed(cx, cy, args.j, args.k, args.alpha, cfg)
    else:
        rs, lim = cs_within_all(cx, cy, args.alpha, cfg)
    doc["result"].update(T_hat=rs.to_list(), limits=_limits_payload(lim))
    return [f"{100 * (1 - args.alpha):g}% inner CS: {rs.render(args.digits)}"] + _render_limits(lim, args.digits)


def _run_test(args, doc, cx, cy):
    doc["parameters"]["alpha"] = args.alpha
    if args.which == "nonsd1":
        rep = test_nonsd1(cx, cy, args.alpha)
    else:
        cfg = CritValConfig(draws=args.draws, seed=args.seed)
        doc["parameters"].update(seed=args.seed, draws=args.draws)
        rep = (test_sd1 if args.which == "sd1" else test_sc)(cx, cy, args.alpha, cfg)
    doc["result"].update(
        hypothesis=rep.hypothesis, statistic=rep.statistic, critical_value=rep.critical_value,
        reject=rep.reject, t_stats=rep.t_stats, selected_moments=rep.selected_moments,
        per_k_decisions=rep.per_k_decisions, kappa=rep.kappa,
    )
    crit = "" if rep.critical_value is None else f", critical value {rep.critical_value:.4f}"
    verdict = "reject" if rep.reject else "do not reject"
    return [f"H0 {rep.hypothesis.value} (X vs Y): statistic {rep.statistic:.4f}{crit} -> {verdict} at alpha={args.alpha:g}"]


def _integer_counts(s: OrdinalSample, warnings: list):
    c = s.counts
    if s.sum_w2 is None and np.all(c == np.round(c)):
        return c
    warnings.append(f"{s.label or 'sample'}: weighted totals rescaled to the Kish effective size and rounded")
    return kish_integer_counts(c, s.effective_n)


def _run_bayes(args, doc, cx, cy, sx, sy):
    event = EVENT_ALIASES.get(args.event) or Event(args.event)
    warnings = doc.setdefault("warnings", [])
    kx, ky = _integer_counts(sx, warnings), _integer_counts(sy, warnings)
    cfg = PosteriorConfig(draws=args.draws, seed=args.seed, prior=args.prior)
    doc["parameters"].update(alpha=args.alpha, seed=args.seed, draws=args.draws, prior=args.prior, event=event)
    prob = posterior_prob(kx, ky, event, cfg)
    dec = bayes_decision(prob, args.alpha)
    doc["result"].update(event=event, posterior_probability=prob, decision=dec, counts_x=kx, counts_y=ky)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return [f"posterior Pr({event.value}) = {prob:.4f} -> {dec.value}"]


def _run_simulate(args) -> int:
    from .scenarios import run_scenario_file

    doc, tsv = run_scenario_file(args.scenario)
    doc["provenance"] = _provenance()
    _emit(doc, args.json_out, [json.dumps(doc.get("summary", {}))])
    if args.tsv:
        with open(args.tsv, "w", encoding="utf-8") as fh:
            fh.write(tsv)
    return EXIT_OK


def _provenance() -> dict:
    return {
        "tool": "ordinalq",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }


def _emit(doc, json_out, lines):
    text = dumps(doc)
    if json_out == "-":
        sys.stdout.write(text + "\n")
        return
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    for line in lines:
        print(line)


def run(args) -> int:
    if args.command == "simulate":
        return _run_simulate(args)
    sx, sy, info = _load(args)
    command = args.command if not getattr(args, "which", None) else f"{args.command} {args.which}"
    doc, cx, cy = _base_doc(command, sx, sy, info)
    if args.command == "estimate":
        lines = _run_estimate(args, doc, cx, cy)
    elif args.command == "identify":
        lines = _run_identify(args, doc, cx, cy)
    elif args.command == "cs":
        lines = _run_cs(args, doc, cx, cy)
    elif args.command == "test":
        lines = _run_test(args, doc, cx, cy)
    else:
        lines = _run_bayes(args, doc, cx, cy, sx, sy)
    if args.plot_tsv:
        with open(args.plot_tsv, "w", encoding="utf-8") as fh:
            fh.write(cdf_tsv(cx, cy))
    doc["provenance"] = _provenance()
    _emit(doc, args.json_out, lines)
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (InvalidInputError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
