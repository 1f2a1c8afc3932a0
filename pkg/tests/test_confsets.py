import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordinalq.confsets import EmptyReason, cs_between, cs_within_all, cs_within_fixed
from ordinalq.core import InvalidInputError, OrdinalCdf, OrdinalSample, estimate_cdf
from ordinalq.datasets import GENERAL_HEALTH, health_cdf
from ordinalq.gausssim import CritValConfig
from ordinalq.identify import between_set, within_all_set
from ordinalq.intervals import QuantileSet, qs_subset, rect_subset

CFG = CritValConfig(draws=20000, seed=3)


def test_between_identical_samples_empty():
    x = estimate_cdf(OrdinalSample([10, 20, 30, 40]))
    cs, lim = cs_between(x, x, 0.1, CFG)
    assert cs.is_empty()
    assert lim.empty_reason is EmptyReason.NO_ORDINAL_EVIDENCE
    assert np.all(lim.cxu > lim.cyl)


@pytest.mark.parametrize("n", [10**4, 10**5, 10**6])
def test_between_two_categories_large_n(n):
    x = OrdinalCdf.from_values([0.3], n)
    y = OrdinalCdf.from_values([0.7], n)
    cs, _ = cs_between(x, y, 0.1, CFG)
    assert qs_subset(cs, QuantileSet([(0.3, 0.7)]))
    # each limit moves by at most z * sqrt(0.21 / n) with z < 2.5
    assert cs.length >= 0.4 - 2 * 2.5 * np.sqrt(0.21 / n)


def test_between_limits_use_method1_formula():
    x, y = health_cdf("high_edu_2006", 5000), health_cdf("low_edu_2006", 5000)
    cs, lim = cs_between(x, y, 0.1, CFG)
    from scipy.stats import norm

    z = norm.ppf(1 - lim.tilde_alpha)
    np.testing.assert_allclose(lim.cxu, x.F + z * np.sqrt(np.diag(x.Sigma) / x.n))
    expected = QuantileSet((a, b) for a, b in zip(lim.cxu, lim.cyl) if a < b)
    assert cs == expected


def test_between_limits_crossed_reason():
    x, y = OrdinalCdf.from_values([0.30], 50), OrdinalCdf.from_values([0.32], 50)
    cs, lim = cs_between(x, y, 0.1, CFG)
    assert cs.is_empty() and lim.empty_reason is EmptyReason.LIMITS_CROSSED


counts = st.lists(st.integers(0, 60), min_size=4, max_size=4).filter(lambda c: sum(c) > 0)


@settings(max_examples=40, deadline=None)
@given(counts, counts)
def test_between_is_inside_point_estimate(a, b):
    x, y = estimate_cdf(OrdinalSample(a)), estimate_cdf(OrdinalSample(b))
    cs, lim = cs_between(x, y, 0.1, CritValConfig(2000, 1))
    assert qs_subset(cs, between_set(x, y))


@settings(max_examples=25, deadline=None)
@given(counts, counts)
def test_within_sets_inside_point_estimate(a, b):
    x, y = estimate_cdf(OrdinalSample(a)), estimate_cdf(OrdinalSample(b))
    point = within_all_set(x, y)
    rs3, _ = cs_within_all(x, y, 0.1, CritValConfig(2000, 1))
    assert rect_subset(rs3, point)
    rs2, _ = cs_within_fixed(x, y, 1, 3, 0.1, CritValConfig(2000, 1))
    assert rect_subset(rs2, point)


def test_nesting_in_alpha():
    x, y = health_cdf("white_2006", 8000), health_cdf("black_2006", 8000)
    s99, _ = cs_between(x, y, 0.01, CFG)
    s95, _ = cs_between(x, y, 0.05, CFG)
    s90, _ = cs_between(x, y, 0.10, CFG)
    assert qs_subset(s99, s95) and qs_subset(s95, s90)
    assert not s99.is_empty()
    r99, _ = cs_within_all(health_cdf("poverty_2006", 10**6), health_cdf("poverty_2008", 10**6), 0.01, CFG)
    r90, _ = cs_within_all(health_cdf("poverty_2006", 10**6), health_cdf("poverty_2008", 10**6), 0.10, CFG)
    assert rect_subset(r99, r90)


def test_within_fixed_identical_empty():
    x = health_cdf("poverty_2006")
    rs, lim = cs_within_fixed(x, x, 2, 4, 0.1, CFG)
    assert rs.is_empty()
    assert lim.empty_reason is EmptyReason.NO_ORDINAL_EVIDENCE


def test_within_fixed_large_n_converges():
    x, y = health_cdf("poverty_2006", 10**8), health_cdf("poverty_2008", 10**8)
    rs, lim = cs_within_fixed(x, y, 2, 4, 0.1, CFG)
    assert len(rs) == 1
    (a, b), (c, d) = rs.rects[0]
    np.testing.assert_allclose([a, b, c, d], [0.1560, 0.1656, 0.6710, 0.7062], atol=2e-4)
    assert 0.1560 < a < b < 0.1656 and 0.6710 < c < d < 0.7062
    assert lim.pair == (2, 4)


def test_within_fixed_bad_pair():
    x = health_cdf("poverty_2006")
    with pytest.raises(InvalidInputError):
        cs_within_fixed(x, x, 3, 3, 0.1, CFG)


def test_within_all_identical_empty():
    x = health_cdf("poverty_2006")
    rs, lim = cs_within_all(x, x, 0.1, CFG)
    assert rs.is_empty()
    assert np.all(lim.cxl <= lim.cxu) and np.all(lim.cyl <= lim.cyu)


def test_within_all_large_n_approaches_identified_set():
    x, y = health_cdf("poverty_2006", 10**9), health_cdf("poverty_2008", 10**9)
    rs, _ = cs_within_all(x, y, 0.1, CFG)
    truth = within_all_set(x, y)
    assert rect_subset(rs, truth)
    assert rs.area == pytest.approx(truth.area, rel=0.01)


def test_clamped_display_only():
    x, y = OrdinalCdf.from_values([0.001], 20), OrdinalCdf.from_values([0.01], 20)
    _, lim = cs_within_all(x, y, 0.1, CFG)
    assert lim.cxl[0] < 0
    assert lim.clamped("cxl")[0] == 0.0
