from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orthocell.exact import AffineSignedIsometry

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def F(*xs):
    return tuple(Fraction(x) for x in xs)


small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)


def points(n):
    return st.tuples(*[small_rationals] * n)


@st.composite
def signed_isometries(draw, n, translate=True):
    perm = draw(st.permutations(range(n)))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    t = draw(points(n)) if translate else (0,) * n
    return AffineSignedIsometry.make(perm, signs, t)


@pytest.fixture(scope="session")
def K3():
    from orthocell.symmetric import build_K
    return build_K(3)


@pytest.fixture(scope="session")
def K32():
    from orthocell.symmetric import build_K_subdivided
    return build_K_subdivided(3, 2)
