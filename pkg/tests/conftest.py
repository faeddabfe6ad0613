import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from jetknee.vectorfield import Monomial, Polynomial, PolyVectorField

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_poly_field(rng, dim=3, degree=3, density=0.6, scale=5.0) -> PolyVectorField:
    exps = [e for e in itertools.product(range(degree + 1), repeat=dim) if sum(e) <= degree]
    comps = []
    for _ in range(dim):
        terms = [Monomial(rng.uniform(-scale, scale), e) for e in exps if rng.random() < density]
        comps.append(Polynomial(dim, terms))
    return PolyVectorField(tuple(comps))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
