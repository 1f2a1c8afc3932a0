import numpy as np
import pytest

from ordinalq.core import OrdinalCdf


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def cdf(F, n=1000, label=""):
    return OrdinalCdf.from_values(F, n, label)
