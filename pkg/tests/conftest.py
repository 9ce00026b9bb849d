import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orliczapprox import CoeffSeq, OrliczFunction

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EPS = np.finfo(float).eps


def norm_tol(*values):
    """Bisection-width slack for a norm of the given size."""
    return 2 * max(1e-12, 8 * EPS * max(abs(v) for v in values))


orlicz_functions = st.one_of(
    st.floats(1.0, 4.0).map(OrliczFunction.power),
    st.tuples(st.floats(1.0, 3.0), st.floats(0.0, 2.0)).map(lambda pq: OrliczFunction.power_log(*pq)),
    st.just(OrliczFunction.exp_minus_one()),
)

amplitude = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def coeff_seqs(draw, K=64, max_support=24, min_support=0):
    ks = draw(st.lists(st.integers(-K, K), min_size=min_support, max_size=max_support, unique=True))
    amps = draw(st.lists(amplitude, min_size=len(ks), max_size=len(ks)))
    return CoeffSeq(ks, amps)


def random_coeffs(rng, support, K, scale=1.0):
    ks = rng.choice(np.arange(-K, K + 1), size=support, replace=False)
    amps = scale * (rng.standard_normal(support) + 1j * rng.standard_normal(support))
    return CoeffSeq(ks, amps)


BUILTIN_M = [OrliczFunction.power(1), OrliczFunction.power(2), OrliczFunction.power(3.5),
             OrliczFunction.power_log(2, 1), OrliczFunction.exp_minus_one()]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
