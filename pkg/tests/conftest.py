import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from syndetica.window import Window1D

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def windows_1d(draw, max_span=120, lo_range=(-50, 50)):
    lo = draw(st.integers(*lo_range))
    span = draw(st.integers(1, max_span))
    bits = draw(st.lists(st.booleans(), min_size=span, max_size=span))
    return Window1D(lo, lo + span - 1, np.array(bits, dtype=bool))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
