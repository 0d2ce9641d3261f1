import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from swisscheese import SwissCheese, cdisc, disc

settings.register_profile(
    "swisscheese", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("swisscheese")


@pytest.fixture
def worked():
    """Two overlapping discs in cdisc(0, 4); one merge makes it classical."""
    return SwissCheese(cdisc(0, 4), [disc(-1, 1), disc(0.5, 1)])


@pytest.fixture
def annulus():
    return SwissCheese(cdisc(0, 1), [disc(0, 0.5)])


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
