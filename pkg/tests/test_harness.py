import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordinalq.core import InvalidInputError
from ordinalq.harness import (
    GridLaw,
    LatentScenario,
    coverage_study,
    negative_control_between,
    negative_control_within,
    oracle_quantile,
    random_between_scenario,
    random_within_scenario,
    size_study,
    verify_identification,
)


def test_oracle_quantile_two_point():
    law = GridLaw([0.0, 1.0], [0.5, 0.5])
    assert oracle_quantile(law, 0.5) == 0.0
    assert oracle_quantile(law, 0.51) == 1.0
    assert oracle_quantile(law, 1.0) == 1.0


def test_oracle_quantile_uniform_grid():
    law = GridLaw(np.arange(1, 101), np.full(100, 0.01))
    assert oracle_quantile(law, 0.25) == 25


@pytest.mark.parametrize("tau", [0.0, -0.1, 1.2])
def test_oracle_quantile_range(tau):
    with pytest.raises(InvalidInputError):
        oracle_quantile(GridLaw([0.0, 1.0], [0.5, 0.5]), tau)


laws = st.integers(1, 30).flatmap(
    lambda G: st.tuples(
        st.lists(st.integers(-500, 500), min_size=G, max_size=G, unique=True),
        st.lists(st.integers(0, 10), min_size=G, max_size=G).filter(lambda p: sum(p) > 0),
    )
).map(lambda t: GridLaw(np.sort(t[0]) / 100.0, t[1]))


@given(laws, st.floats(1e-6, 1.0), st.integers(-600, 600))
def test_galois_inequalities(law, tau, qi):
    q = qi / 100.0
    assert law.cdf(oracle_quantile(law, tau)) >= tau
    Fq = law.cdf(q)
    if Fq > 0:
        assert oracle_quantile(law, Fq) <= q


def test_mixture_law():
    a = GridLaw([0.0, 1.0], [1, 1])
    b = GridLaw([1.0, 2.0], [1, 1])
    m = GridLaw.mixture([a, b], [0.5, 0.5])
    np.testing.assert_allclose(m.probs, [0.25, 0.5, 0.25])


def test_scenario_validation():
    law = GridLaw.normal()
    with pytest.raises(InvalidInputError):
        LatentScenario(law, law, [0.5, -0.5], [0, 0])
    with pytest.raises(InvalidInputError):
        LatentScenario(law, law, [-0.5, 0.5], [0.1, 0.2], assumption="common")
    with pytest.raises(InvalidInputError):
        LatentScenario(law, law, [-0.5, 0.5], [0.1, 0.1], assumption="nonpositive")


def test_identification_random_scenarios_small():
    rng = np.random.default_rng(3)
    for _ in range(20):
        assert verify_identification(random_between_scenario(rng)) == 0
        assert verify_identification(random_within_scenario(rng)) == 0


def test_random_scenarios_are_not_vacuous():
    rng = np.random.default_rng(4)
    from ordinalq.identify import between_set, within_all_set

    nonempty = 0
    for _ in range(20):
        cx, cy = random_between_scenario(rng).true_ordinal()
        nonempty += not between_set(cx, cy).is_empty()
    assert nonempty >= 15
    cx, cy = random_within_scenario(rng).true_ordinal()
    assert not within_all_set(cx, cy).is_empty()


def test_negative_controls_fail():
    assert verify_identification(negative_control_between(), which="between") > 0
    assert verify_identification(negative_control_within(), which="within") > 0


def test_coverage_requires_reps():
    law = GridLaw.normal()
    scn = LatentScenario(law, law, [-0.5, 0.5], [0, 0], reps=100)
    with pytest.raises(InvalidInputError):
        coverage_study(scn, "between")


def test_coverage_reproducible():
    scn = LatentScenario(GridLaw.normal(), GridLaw.normal(-0.3), [-0.5, 0.5], [0, 0], n_x=300, n_y=300, reps=500, seed=11)
    a = coverage_study(scn, "between", 0.1, draws=2000)
    b = coverage_study(scn, "between", 0.1, draws=2000)
    assert a.rate == b.rate and a.count == b.count


def test_size_interior_of_null_never_rejects():
    # theta_j = -0.2 (about -9 standard errors) at every j
    r = size_study([0.2, 0.6], [0.4, 0.8], "sd1", 0.05, reps=200, seed=5, draws=2000)
    assert r.rate == 0.0
