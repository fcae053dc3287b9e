import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from noetherflux.geometry import AmbientSpace

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SPACES = [
    AmbientSpace.nil3(),
    AmbientSpace.e3(1.0, 0.25),
    AmbientSpace.e3(-1.0, 0.5),
    AmbientSpace.h2xr(),
    AmbientSpace.e3(1.0, 0.0),
    AmbientSpace.e3(-4.0, 0.3),
    AmbientSpace.sol3(),
]


@pytest.fixture(params=SPACES, ids=lambda s: s.describe())
def space(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_points(space, rng, n=20):
    p = rng.uniform(-1, 1, size=(n, 3))
    if not space.is_sol3 and space.kappa < 0:
        r = min(1.0, 0.5 * space.domain_radius)
        p[:, :2] *= r / np.sqrt(2)
    return p
