from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F
from orthocell.complex import CellComplex, verify_cell_decomposition, verify_refinement
from orthocell.exact import AffineMap
from orthocell.polytope import ConvexCell, cone, intersect, volume
from orthocell.symmetric import (
    HalfspaceConstraint,
    IndexOutOfRange,
    NotACube,
    NotStandard,
    Orthotope,
    boundary_K,
    build_K,
    build_K_orthotope,
    build_K_subdivided,
    build_Ko,
    build_Ko_exhaustive,
    cube_structure,
    cubic_stretching,
    halfspace,
    halfspace_family,
    is_fundamental,
    orthotope_structure,
    standard_cube,
    subcube,
)
from orthocell.complex import pullback
from orthocell.symmetry import enumerate_cube_symmetries
from orthocell.polytope import apply_map


def pt(*xs):
    return ConvexCell.point(F(*xs))


def seg(a, b):
    return ConvexCell.hull([F(a), F(b)])


H = HalfspaceConstraint


# -- half-spaces ------------------------------------------------------------------------

def test_halfspace_examples():
    assert halfspace(1, 1, 1, 1, -1) == seg(0, 1)
    assert halfspace(1, 1, 1, -1, 1) == seg(-1, 0)
    assert halfspace(1, 1, 1, 1, 1) == seg(-1, 1)
    tri = halfspace(2, 1, 2, 1, 1)
    assert tri.vertices == (F(-1, -1), F(1, -1), F(1, 1))


def test_halfspace_identifications():
    assert H(2, 1, 2, 1, 1) == H(2, 2, 1, -1, -1)
    assert H(2, 1, 1, 1, 1) == H(2, 2, 2, -1, -1)
    assert len(halfspace_family(1)) == 3
    assert len(halfspace_family(2)) == 1 + 2 * 2 + 4
    with pytest.raises(IndexOutOfRange):
        H(2, 3, 1, 1, 1)


def test_is_fundamental_examples():
    assert is_fundamental({H(1, 1, 1, 1, -1), H(1, 1, 1, 1, 1)})
    assert not is_fundamental({H(1, 1, 1, 1, 1)})
    assert is_fundamental(halfspace_family(2), 2)


# -- K° and K ---------------------------------------------------------------------------

def test_Ko1_and_K1():
    assert build_Ko(1) == {pt(0), seg(-1, 0), seg(0, 1)}
    assert set(build_K(1).cells) == {pt(-1), pt(0), pt(1), seg(-1, 0), seg(0, 1)}
    assert build_Ko(0) == {ConvexCell.point(())}


def test_Ko_counts():
    Ko2 = build_Ko(2)
    assert len(Ko2) == 17
    assert sum(c.dim == 2 for c in Ko2) == 8 and sum(c.dim == 1 for c in Ko2) == 8


@pytest.mark.parametrize("d", [1, 2])
def test_minimal_subsets_agree_with_exhaustive_definition(d):
    assert build_Ko(d) == build_Ko_exhaustive(d)


def test_K2_counts_and_boundary():
    K2 = build_K(2)
    assert len(K2) == 33 and len(K2.of_dim(2)) == 8
    dK = boundary_K(2)
    assert len(dK) == 16
    assert verify_cell_decomposition(dK).passed


def test_K_on_a_shifted_cube():
    C = Orthotope.make([0, 0], [2, 2])
    K = build_K(2, C)
    assert pt(1, 1) in K and len(K) == 33
    assert verify_cell_decomposition(K).passed
    with pytest.raises(NotACube):
        build_K(2, Orthotope.make([0, 0], [1, 2]))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_Ko_union_is_the_cube_and_closed_under_intersection(d):
    Ko = build_Ko(d)
    top = [c for c in Ko if c.dim == d]
    assert sum(volume(c, d) for c in top) == 2 ** d
    cells = sorted(Ko)
    if d == 3:
        cells = cells[::5]
    for a, b in combinations(cells, 2):
        c = intersect(a, b)
        assert c is None or c in Ko


@pytest.mark.parametrize("d", [1, 2, 3])
def test_every_halfspace_is_a_union_of_Ko_cells(d):
    Ko = CellComplex.of(d, build_Ko(d))
    for h in halfspace_family(d):
        cell = halfspace(d, h.i, h.j, h.a, h.b)
        inside = [c for c in Ko.within(cell) if c.dim == d]
        assert sum(volume(c, d) for c in inside) == volume(cell, d)


@pytest.mark.parametrize("d", [2, 3])
def test_every_Ko_cell_has_a_symmetric_copy_in_the_positive_orthant(d):
    G = enumerate_cube_symmetries(d)
    for c in build_Ko(d):
        assert any(all(x >= 0 for v in apply_map(g, c).vertices for x in v) for g in G)


@pytest.mark.parametrize("d", [2, 3])
def test_boundary_traces_lie_in_single_facets(d):
    for c in build_Ko(d):
        touching = [v for v in c.vertices if any(abs(x) == 1 for x in v)]
        if not touching:
            continue
        assert any(all(v[i] == s for v in touching) for i in range(d) for s in (1, -1))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_boundary_complex_is_the_trace_of_Ko_on_the_boundary(d):
    C = standard_cube(d)
    facets = [f.cell() for f in C.faces() if f.dim == d - 1]
    traces = set()
    for c in build_Ko(d):
        for f in facets:
            t = intersect(c, f)
            if t is not None:
                traces.add(t)
    assert traces == set(boundary_K(d).cells)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_Ko_is_the_cone_over_the_boundary_and_cells_are_simplices(d):
    zero = F(*[0] * d)
    cones = {pt(*zero)} | {cone(zero, h) for h in boundary_K(d).cells}
    assert cones == set(build_Ko(d))
    assert all(len(c.vertices) == c.dim + 1 for c in build_K(d).cells)


# -- orthotopes and stretching -----------------------------------------------------------

def test_cube_and_orthotope_structures():
    assert set(cube_structure(1).cells) == {seg(-1, 1), pt(-1), pt(1)}
    assert len(cube_structure(2)) == 9
    R = orthotope_structure(Orthotope.make([0, 0], [2, 3]))
    assert len(R) == 9 and pt(2, 3) in R and ConvexCell.box([0, 0], [2, 3]) in R


def test_cubic_stretching():
    Qb = Orthotope.standard([2, 3])
    m = cubic_stretching(Qb)
    assert m(F(2, -3)) == F(1, -1)
    assert m == AffineMap.scaling([Fraction(1, 2), Fraction(1, 3)])
    assert cubic_stretching(standard_cube(2)) == AffineMap.identity(2)
    assert pullback(m, cube_structure(2)) == orthotope_structure(Qb)
    with pytest.raises(NotStandard):
        cubic_stretching(Orthotope.make([0, 0], [1, 1]))


def test_orthotope_symmetric_decomposition():
    K = build_K_orthotope(Orthotope.make([0, 0], [2, 3]))
    assert len(K) == 33 and pt(1, "3/2") in K
    assert verify_cell_decomposition(K).passed


# -- subdivisions -------------------------------------------------------------------------

def test_subcube_examples():
    assert subcube(1, 2, [0]).cell() == seg(-1, 0)
    assert subcube(2, 2, [1, 1]).cell() == ConvexCell.box([0, 0], [1, 1])
    assert subcube(1, 3, [1]).cell() == seg("-1/3", "1/3")
    with pytest.raises(IndexOutOfRange):
        subcube(1, 2, [2])


def test_subdivided_examples():
    K12 = build_K_subdivided(1, 2)
    assert len(K12) == 9
    assert {c for c in K12.cells if c.dim == 0} == {pt(x) for x in (-1, "-1/2", 0, "1/2", 1)}
    assert len(build_K_subdivided(2, 2).of_dim(2)) == 32
    assert build_K_subdivided(2, 1) == build_K(2)


@pytest.mark.parametrize("n,l", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_subdivision_refines_and_decomposes(n, l):
    Kl = build_K_subdivided(n, l)
    assert verify_cell_decomposition(Kl).passed
    assert verify_refinement(Kl, build_K(n)).passed
    assert len(Kl.of_dim(n)) == l ** n * 2 ** n * (1 if n == 1 else 2)


@settings(max_examples=25)
@given(st.integers(1, 2), st.integers(1, 4))
def test_subdivision_top_volume_and_simplices(n, l):
    Kl = build_K_subdivided(n, l)
    assert sum(volume(c, n) for c in Kl.of_dim(n)) == 2 ** n
    assert all(len(c.vertices) == c.dim + 1 for c in Kl.cells)
