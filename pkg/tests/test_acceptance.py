"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line with the measured
quantity and its runtime, then asserts.  Run just this module with

    pytest tests/test_acceptance.py -v -s
"""

import json
import math
import time

import numpy as np
import pytest

from ordinalq.bayes import Event, PosteriorConfig, posterior_prob
from ordinalq.cli import EXIT_OK, main
from ordinalq.core import OrdinalCdf
from ordinalq.dataio import result_payload, write_table
from ordinalq.datasets import GENERAL_HEALTH, health_counts, health_sample
from ordinalq.gausssim import CritValConfig, Statistic, critvals_method1, simulate_phi_quantile
from ordinalq.harness import (
    GridLaw,
    LatentScenario,
    coverage_study,
    negative_control_between,
    negative_control_within,
    random_between_scenario,
    random_within_scenario,
    size_study,
    verify_identification,
)
from ordinalq.identify import between_set, single_crossing, within_pair_sets
from ordinalq.intervals import qs_contains

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail, seconds, budget=None):
        timing = f"{seconds:.2f}s" + (f" (budget {budget:g}s)" if budget else "")
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {title}: {detail}; {timing}")
        assert ok, detail
        if budget is not None:
            assert seconds < budget, f"runtime {seconds:.1f}s over budget {budget}s"

    return emit


def _cdf(name, n=30000):
    return OrdinalCdf.from_values(GENERAL_HEALTH[name], n, label=name)


def test_1_identification_regression(report):
    t0 = time.perf_counter()
    ts = between_set(_cdf("high_edu_2006"), _cdf("low_edu_2006"))
    want = [(0.0161, 0.0287), (0.0734, 0.1205), (0.2957, 0.3905), (0.6427, 0.6731)]
    exact = list(ts.intervals) == want
    rounded = [(round(a, 2), round(b, 2)) for a, b in ts.intervals]
    listed = [(0.02, 0.03), (0.07, 0.12), (0.30, 0.39), (0.64, 0.67)]
    secs = time.perf_counter() - t0
    report(1, "education between set", exact and rounded == listed, f"T_X = {ts.render(4)}", secs, 1)


def test_2_single_crossing_regression(report):
    t0 = time.perf_counter()
    x, y = _cdf("poverty_2006"), _cdf("poverty_2008")
    m = single_crossing(x, y)
    t1, t2 = within_pair_sets(x, y, 2, 4)
    inside = qs_contains(t1, 0.16) and qs_contains(t2, 0.70)
    secs = time.perf_counter() - t0
    report(2, "poverty single crossing", m == 2 and inside,
           f"m = {m}, T_1 = {t1.render(4)}, T_2 = {t2.render(4)}", secs, 1)


def test_3_oracle_equivalence(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    between = [verify_identification(random_between_scenario(rng), 0.001) for _ in range(200)]
    within = [verify_identification(random_within_scenario(rng), 0.001) for _ in range(200)]
    neg_b = verify_identification(negative_control_between(), 0.001, "between")
    neg_w = verify_identification(negative_control_within(), 0.001, "within")
    secs = time.perf_counter() - t0
    ok = sum(between) == 0 and sum(within) == 0 and neg_b >= 1 and neg_w >= 1
    report(3, "latent oracle", ok,
           f"violations between={sum(between)} within={sum(within)}; "
           f"negative controls between={neg_b} within={neg_w}", secs, 120)


def test_4_critical_value_closed_forms(report):
    t0 = time.perf_counter()
    draws = 100000
    one = OrdinalCdf.from_values([0.5], 1000)
    cv = critvals_method1(one, one, 0.10, CritValConfig(draws, seed=1))
    p_alpha = 1 - math.sqrt(0.9)
    tol_alpha = 3 * math.sqrt(p_alpha * (1 - p_alpha) / draws)
    errs = [abs(cv.tilde_alpha - p_alpha) / tol_alpha]
    details = [f"tilde_alpha={cv.tilde_alpha:.5f} vs {p_alpha:.5f}"]
    p = 0.95
    for d in (1, 2, 5, 10):
        q = simulate_phi_quantile(np.eye(d), CritValConfig(draws, seed=10 + d, statistic=Statistic.MAX), p)
        exact = p ** (1 / d)
        errs.append(abs(q - exact) / (3 * math.sqrt(exact * (1 - exact) / draws)))
        details.append(f"d={d}: {q:.5f} vs {exact:.5f}")
    secs = time.perf_counter() - t0
    report(4, "critical-value closed forms", max(errs) <= 1.0,
           "; ".join(details) + f"; worst |err|/tol = {max(errs):.2f}", secs, 30)


COVERAGE_CASES = [
    # (label, method, pair, law_y, thresholds)
    ("method 1, shift 0.3", "between", None, GridLaw.normal(-0.3, 1.0), [-0.5, 0.5]),
    ("method 2, dispersion", "within-fixed", (1, 2), GridLaw.normal(0.0, 2.0), [-1.0, 1.0]),
    ("method 2, shift 0.3", "within-fixed", (1, 2), GridLaw.normal(-0.3, 1.0), [-0.5, 0.5]),
    ("method 3, dispersion", "within-all", None, GridLaw.normal(0.0, 2.0), [-1.0, 1.0]),
    ("method 3, shift 0.3", "within-all", None, GridLaw.normal(-0.3, 1.0), [-0.5, 0.5]),
]


def test_5_coverage(report):
    t0 = time.perf_counter()
    rows, ok = [], True
    for i, (label, method, pair, law_y, g) in enumerate(COVERAGE_CASES):
        scn = LatentScenario(GridLaw.normal(), law_y, g, [0.0, 0.0], n_x=1000, n_y=1000, reps=1000, seed=100 + i)
        res = coverage_study(scn, method, alpha=0.10, draws=20000, pair=pair)
        ok &= res.rate >= 0.885
        rows.append(f"{label}: {res.rate:.3f} (empty {res.details['empty_fraction']:.2f})")
    secs = time.perf_counter() - t0
    report(5, "coverage >= 0.885 at alpha=0.10", ok, "; ".join(rows), secs, 600)


def test_6_test_sizes(report):
    t0 = time.perf_counter()
    iut = size_study([0.3, 0.5], [0.3, 0.7], "nonsd1", 0.05, reps=2000, seed=61)
    sd1 = size_study([0.2, 0.5, 0.8], [0.2, 0.5, 0.8], "sd1", 0.05, reps=2000, seed=62)
    secs = time.perf_counter() - t0
    report(6, "test sizes <= 0.065 at alpha=0.05", iut.rate <= 0.065 and sd1.rate <= 0.065,
           f"IUT one-binding {iut.rate:.4f}; SD1 all-binding {sd1.rate:.4f}", secs, 300)


def test_7_bayes(report):
    t0 = time.perf_counter()
    sym = posterior_prob([50, 50], [50, 50], Event.SD1_XY, PosteriorConfig(10000, 7))
    race = posterior_prob(health_counts("white_2006"), health_counts("black_2006"), Event.SD1_XY,
                          PosteriorConfig(10000, 7))
    secs = time.perf_counter() - t0
    report(7, "Bayesian symmetry and white/Black dominance", abs(sym - 0.5) <= 0.015 and race > 0.95,
           f"Pr(SD1) symmetric = {sym:.4f}; white over Black = {race:.4f}", secs, 60)


RANDOMIZED = [
    ["cs", "between"],
    ["cs", "within-fixed", "--j", "1", "--k", "3"],
    ["cs", "within-all"],
    ["test", "sd1"],
    ["test", "sc"],
    ["bayes", "--event", "sd1"],
    ["bayes", "--event", "sc"],
]


def test_8_determinism(report, tmp_path):
    t0 = time.perf_counter()
    table = tmp_path / "edu.csv"
    write_table(table, health_sample("low_edu_2006"), health_sample("high_edu_2006"))
    scen = tmp_path / "scn.json"
    scen.write_text(json.dumps({"task": "size", "test": "sd1", "cdf_x": [0.2, 0.5], "cdf_y": [0.2, 0.5],
                                "n_x": 200, "n_y": 200, "reps": 50, "seed": 3, "draws": 2000}))
    runs = [argv + ["--table", str(table), "--seed", "7", "--draws", "10000"] for argv in RANDOMIZED]
    runs.append(["simulate", "--scenario", str(scen)])
    bad = []
    for argv in runs:
        payloads = []
        for rep in range(2):
            out = tmp_path / f"r{rep}.json"
            assert main(argv + ["--json", str(out)]) == EXIT_OK
            payloads.append(result_payload(json.loads(out.read_text(encoding="utf-8"))))
        if payloads[0] != payloads[1]:
            bad.append(" ".join(argv[:2]))
    secs = time.perf_counter() - t0
    report(8, "byte-identical result payloads", not bad,
           f"{len(runs)} randomized invocations, mismatches: {bad or 'none'}", secs)
