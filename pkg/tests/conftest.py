import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from matroidlab.constructions import random_gf_matroid

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def small_matroids(draw, min_n=1, max_n=7):
    """Random GF(p) column matroids; the draw is a seed so shrinking stays cheap."""
    n = draw(st.integers(min_n, max_n))
    r = draw(st.integers(0, n))
    p = draw(st.sampled_from([2, 3, 5]))
    seed = draw(st.integers(0, 10**6))
    return random_gf_matroid(n, r, p, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(1234)
