from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F, points, signed_isometries
from orthocell.exact import (
    AffineMap,
    AffineSignedIsometry,
    NonInvertible,
    Q,
    det,
    nullspace,
    pad,
    primitive,
    rank,
    rref,
    signed_permutations,
    solve,
)


def test_rational_coercion_is_exact():
    assert Q("3/6") == Fraction(1, 2)
    assert Q(Fraction(4, 8)).denominator == 2
    with pytest.raises(TypeError):
        Q(0.5)


def test_zero_padding_identifies_subspace():
    assert pad([1, 2], 4) == F(1, 2, 0, 0)
    with pytest.raises(ValueError):
        pad([1, 2, 3], 2)


def test_primitive_keeps_sign_and_clears_denominators():
    assert primitive([Fraction(1, 2), Fraction(-1, 3)], Fraction(1, 6)) == ((3, -2), 1)
    assert primitive([0, 0], 0) == ((0, 0), 0)
    assert primitive([-2, 4], -6) == ((-1, 2), -3)


def test_linear_algebra_basics():
    red, piv = rref([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert piv == [0, 1] and len(red) == 2
    assert rank([[1, 1], [2, 2]]) == 1
    ns = nullspace([[1, 1, 0]], 3)
    assert all(v[0] + v[1] == 0 for v in ns) and len(ns) == 2
    assert solve([[2, 0], [0, 4]], [1, 1]) == F("1/2", "1/4")
    assert solve([[1, 1], [1, 1]], [0, 1]) is None
    assert det([[1, 2], [3, 4]]) == -2
    assert det([]) == 1


def test_affine_map_inverse_and_singularity():
    m = AffineMap.scaling([2, 3], [1, -1])
    assert m.inverse()(m(F(5, 7))) == F(5, 7)
    with pytest.raises(NonInvertible):
        AffineMap.from_rows([[1, 1], [1, 1]], [0, 0]).inverse()
    with pytest.raises(NonInvertible):
        AffineMap.from_rows([[1, 0]], [0]).inverse()


def test_signed_isometry_action_and_string():
    g = AffineSignedIsometry.make([1, 0], [1, -1], [0, 1])
    assert g(F(2, 3)) == F(-3, 3)
    assert str(AffineSignedIsometry.make([0], [-1], [2])) == "(x1) -> (-x1+2)"
    with pytest.raises(ValueError):
        AffineSignedIsometry.make([0, 0], [1, 1])
    with pytest.raises(ValueError):
        AffineSignedIsometry.make([0, 1], [1, 2])


@pytest.mark.parametrize("d,order", [(1, 2), (2, 8), (3, 48)])
def test_signed_permutation_count(d, order):
    elems = list(signed_permutations(d))
    assert len(elems) == len(set(elems)) == order


def test_embedded_signed_permutations_fix_extra_axes():
    for g in signed_permutations(1, 3):
        assert g(F(1, 2, 3))[1:] == F(2, 3)


@given(signed_isometries(3), signed_isometries(3), points(3))
def test_isometry_compose_matches_pointwise(g, h, p):
    assert g.compose(h)(p) == g(h(p))
    assert g.compose(h).as_affine()(p) == g.as_affine().compose(h.as_affine())(p)


@given(signed_isometries(3), points(3))
def test_isometry_inverse_round_trip(g, p):
    assert g.inverse()(g(p)) == p
    assert g.compose(g.inverse()) == AffineSignedIsometry.identity(3)


@given(signed_isometries(2), points(2), points(2))
def test_isometry_preserves_distances(g, p, q):
    d2 = sum((a - b) ** 2 for a, b in zip(p, q))
    assert sum((a - b) ** 2 for a, b in zip(g(p), g(q))) == d2


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_solve_agrees_with_det(rows):
    b = [1, 2, 3]
    x = solve(rows, b)
    assert (x is None) == (det(rows) == 0)
    if x is not None:
        assert all(sum(Fraction(a) * xi for a, xi in zip(r, x)) == bi for r, bi in zip(rows, b))
