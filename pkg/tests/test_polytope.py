import warnings
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import F, points, signed_isometries
from orthocell.exact import AffineSignedIsometry
from orthocell.polytope import (
    ConvexCell,
    DegenerateCone,
    DimensionMismatch,
    EmptyCell,
    Unbounded,
    ZeroDimensional,
    _eval,
    apply_map,
    canonicalize,
    cell_boundary_facets,
    cone,
    intersect,
    relative_interior_point,
    triangulate,
    volume,
)

SQUARE = [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)]


def square():
    return canonicalize(SQUARE)


# -- canonicalize ------------------------------------------------------------------------

def test_square_from_inequalities():
    c = square()
    assert c.vertices == (F(-1, -1), F(-1, 1), F(1, -1), F(1, 1))
    assert c.dim == 2


def test_halfspace_x_ge_y_in_square():
    c = canonicalize(SQUARE + [((1, -1), 0)])
    assert c.vertices == (F(-1, -1), F(1, -1), F(1, 1))
    assert c.dim == 2


def test_two_opposite_inequalities_give_origin():
    c = canonicalize([((1,), 0), ((-1,), 0), ((1,), 1), ((-1,), 1)])
    assert c.vertices == (F(0),) and c.dim == 0


def test_empty_and_unbounded_are_reported():
    with pytest.raises(EmptyCell):
        canonicalize([((1,), -2), ((-1,), 1)])
    with pytest.raises(Unbounded):
        canonicalize([((1, 0), 0), ((0, 1), 0)])


def test_equations_are_honoured():
    c = canonicalize(SQUARE, equations=[((1, -1), 0)])
    assert c.vertices == (F(-1, -1), F(1, 1)) and c.dim == 1


# -- intersect ---------------------------------------------------------------------------

def test_intersect_examples():
    sq = square()
    assert intersect(sq, sq) == sq
    lower = canonicalize(SQUARE + [((1, -1), 0)])
    upper = canonicalize(SQUARE + [((-1, 1), 0)])
    assert intersect(lower, upper).vertices == (F(-1, -1), F(1, 1))
    a = ConvexCell.box([0], [1])
    b = ConvexCell.box([-1], [0])
    assert intersect(a, b) == ConvexCell.point([0])
    assert intersect(ConvexCell.box([0], [1]), ConvexCell.box([2], [3])) is None
    with pytest.raises(DimensionMismatch):
        intersect(a, sq)


# -- isometries --------------------------------------------------------------------------

def test_apply_isometry_examples():
    cube = ConvexCell.box([-1] * 3, [1] * 3)
    assert apply_map(AffineSignedIsometry.identity(3), cube) == cube
    flip = AffineSignedIsometry.make([0], [-1])
    assert apply_map(flip, ConvexCell.box([0], [1])) == ConvexCell.box([-1], [0])
    swap = AffineSignedIsometry.make([1, 0], [1, 1])
    lower = canonicalize(SQUARE + [((1, -1), 0)])
    upper = canonicalize(SQUARE + [((-1, 1), 0)])
    assert apply_map(swap, lower) == upper


# -- cones -------------------------------------------------------------------------------

def test_cone_examples():
    seg = ConvexCell.hull([F(1, -1), F(1, 1)])
    tri = cone(F(0, 0), seg)
    assert tri.vertices == (F(0, 0), F(1, -1), F(1, 1)) and tri.dim == 2
    assert cone(F(0, 0), ConvexCell.point(F(1, 0))).vertices == (F(0, 0), F(1, 0))
    top = ConvexCell.hull([F(1, 1, 1), F(-1, 1, 1), F(-1, -1, 1)])
    tet = cone(F(0, 0, 0), top)
    assert tet.dim == 3 and len(tet.vertices) == 4


def test_degenerate_cone_warns_but_returns():
    seg = ConvexCell.hull([F(0, 0), F(2, 0)])
    with pytest.warns(DegenerateCone):
        c = cone(F(1, 0), seg)
    assert c == seg


# -- interior points, facets, volume ----------------------------------------------------

def test_relative_interior_point_examples():
    assert relative_interior_point(ConvexCell.box([-1], [1])) == F(0)
    assert relative_interior_point(ConvexCell.hull([F(0, 0), F(1, 0), F(1, 1)])) == F("2/3", "1/3")
    assert relative_interior_point(ConvexCell.point([0])) == F(0)


def test_cell_boundary_facets_examples():
    assert set(cell_boundary_facets(ConvexCell.box([-1], [1]))) == {ConvexCell.point([-1]), ConvexCell.point([1])}
    assert len(cell_boundary_facets(square())) == 4
    tri = ConvexCell.hull([F(0, 0), F(1, -1), F(1, 1)])
    assert len(cell_boundary_facets(tri)) == 3
    with pytest.raises(ZeroDimensional):
        cell_boundary_facets(ConvexCell.point([0, 0]))


def test_volume_examples():
    assert volume(square(), 2) == 4
    assert volume(ConvexCell.hull([F(0, 0), F(1, -1), F(1, 1)]), 2) == 1
    assert volume(ConvexCell.hull([F(0, 0), F(1, 0)]), 1) == 1
    with pytest.raises(DimensionMismatch):
        volume(square(), 1)


def test_triangulation_of_cube_has_unit_total():
    cube = ConvexCell.box([0] * 3, [1] * 3)
    simplices = triangulate(cube)
    assert all(len(s) == 4 for s in simplices)
    assert volume(cube, 3) == 1


# -- properties --------------------------------------------------------------------------

@st.composite
def simplices(draw, n):
    pts = draw(st.lists(points(n), min_size=n + 1, max_size=n + 1, unique=True))
    c = ConvexCell.hull(pts)
    assume(c.dim == n)
    return c


@st.composite
def boxes(draw, n):
    lo = draw(points(n))
    ext = draw(st.tuples(*[st.fractions(min_value=Fraction(1, 8), max_value=3, max_denominator=8)] * n))
    return ConvexCell.box(lo, [a + e for a, e in zip(lo, ext)])


cells2 = st.one_of(simplices(2), boxes(2))
cells3 = st.one_of(simplices(3), boxes(3))


@given(st.one_of(cells2, cells3))
def test_canonicalize_is_idempotent(c):
    again = canonicalize(c.facets, c.equations, c.ambient_dim)
    assert again == c
    assert canonicalize(again.facets, again.equations, again.ambient_dim) == again


@given(cells3, signed_isometries(3))
def test_isometry_preserves_volume_and_inverts(c, g):
    img = apply_map(g, c)
    assert img.dim == c.dim
    assert volume(img, img.dim) == volume(c, c.dim)
    assert apply_map(g.inverse(), img) == c


@given(cells2, points(2))
def test_cone_is_idempotent(base, apex):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateCone)
        once = cone(apex, base)
        assert cone(apex, once) == once


@given(cells2, cells2)
def test_intersection_is_commutative(a, b):
    assert intersect(a, b) == intersect(b, a)


@given(st.one_of(cells2, cells3))
def test_every_vertex_is_tight_on_dim_many_facets(c):
    for v in c.vertices:
        assert all(_eval(f, v) >= 0 for f in c.facets)
        assert sum(_eval(f, v) == 0 for f in c.facets) >= c.dim


@given(st.one_of(cells2, cells3))
def test_barycenter_is_interior(c):
    assert c.relint_contains(relative_interior_point(c))
    assert not any(c.relint_contains(v) for v in c.vertices) or c.dim == 0


@given(boxes(2), st.integers(1, 3))
def test_volume_additivity_under_grid_split(c, k):
    lo, hi = c.lo, c.hi
    step = [(b - a) / k for a, b in zip(lo, hi)]
    total = Fraction(0)
    for i in range(k):
        for j in range(k):
            piece = ConvexCell.box([lo[0] + i * step[0], lo[1] + j * step[1]],
                                   [lo[0] + (i + 1) * step[0], lo[1] + (j + 1) * step[1]])
            total += volume(piece, 2)
    assert total == volume(c, 2)
