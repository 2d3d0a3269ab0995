"""Convex rational polytopes with canonical vertex representation."""
from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Iterable, Sequence

from .exact import (
    Point,
    as_affine,
    as_point,
    barycenter,
    det,
    dot,
    nullspace,
    primitive,
    rank,
    rref,
    sub,
)

Constraint = tuple  # (coeffs: tuple[int, ...], const: int) meaning coeffs.x + const (>= | ==) 0


class EmptyCell(ValueError):
    pass


class Unbounded(ValueError):
    pass


class ZeroDimensional(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class DegenerateCone(UserWarning):
    pass


def _eval(con: Constraint, p: Sequence) -> Fraction:
    coeffs, const = con
    return dot(coeffs, p) + const


class ConvexCell:
    """A nonempty compact convex polytope in R^n, identified by its vertex set.

    Construct with :meth:`hull` or :func:`canonicalize`.  ``equations`` cut out the
    affine hull; ``facets`` are the facet inequalities inside that hull.
    """

    __slots__ = ("vertices", "ambient_dim", "dim", "equations", "facets", "chart", "lo", "hi", "_hash")

    def __init__(self, vertices, ambient_dim, dim, equations, facets, chart):
        self.vertices: tuple = vertices
        self.ambient_dim: int = ambient_dim
        self.dim: int = dim
        self.equations: tuple = equations
        self.facets: tuple = facets
        self.chart: tuple = chart
        self.lo = tuple(min(c) for c in zip(*vertices))
        self.hi = tuple(max(c) for c in zip(*vertices))
        self._hash = hash(vertices)

    # -- construction -----------------------------------------------------------------
    @classmethod
    def hull(cls, points: Iterable[Sequence]) -> "ConvexCell":
        pts = sorted(set(as_point(p) for p in points))
        if not pts:
            raise EmptyCell("convex hull of no points")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("points of different ambient dimension")
        p0 = pts[0]
        diffs = [sub(p, p0) for p in pts[1:]]
        red, chart = rref(diffs) if diffs else ([], [])
        k = len(chart)
        eqs = []
        for a in nullspace(red, n) if red else nullspace([], n):
            eqs.append(primitive(a, -dot(a, p0)))
        eqs = tuple(sorted(set(eqs)))
        if k == 0:
            return cls((p0,), n, 0, eqs, (), ())
        proj = [tuple(p[c] for c in chart) for p in pts]
        facets = _chart_facets(proj, k)
        lifted = []
        for coeffs, const in facets:
            full = [0] * n
            for c, a in zip(chart, coeffs):
                full[c] = a
            lifted.append((tuple(full), const))
        verts = []
        if len(pts) == k + 1:
            verts = pts
        else:
            for p, q in zip(pts, proj):
                tight = [f[0] for f in facets if _eval(f, q) == 0]
                if len(tight) >= k and rank(tight) == k:
                    verts.append(p)
        return cls(tuple(verts), n, k, eqs, tuple(sorted(set(lifted))), tuple(chart))

    @classmethod
    def point(cls, p: Sequence) -> "ConvexCell":
        return cls.hull([p])

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "ConvexCell":
        """Axis-aligned box; degenerate axes allowed."""
        from itertools import product

        axes = [sorted({as_point([a])[0], as_point([b])[0]}) for a, b in zip(lo, hi)]
        return cls.hull(product(*axes))

    # -- identity -------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, ConvexCell) and self.vertices == other.vertices

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.dim, self.vertices)

    def __repr__(self):
        vs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"ConvexCell(dim={self.dim}, [{vs}])"

    # -- predicates -----------------------------------------------------------------
    @property
    def hrep(self) -> tuple:
        """Inequalities ``a.x + c >= 0`` describing the cell (equations doubled)."""
        out = list(self.facets)
        for a, c in self.equations:
            out.append((a, c))
            out.append((tuple(-x for x in a), -c))
        return tuple(out)

    def contains_point(self, p: Sequence) -> bool:
        for i in range(self.ambient_dim):
            if p[i] < self.lo[i] or p[i] > self.hi[i]:
                return False
        return all(_eval(e, p) == 0 for e in self.equations) and all(_eval(f, p) >= 0 for f in self.facets)

    def relint_contains(self, p: Sequence) -> bool:
        if self.dim == 0:
            return tuple(p) == self.vertices[0]
        return all(_eval(e, p) == 0 for e in self.equations) and all(_eval(f, p) > 0 for f in self.facets)

    def contains(self, other: "ConvexCell") -> bool:
        for i in range(self.ambient_dim):
            if other.lo[i] < self.lo[i] or other.hi[i] > self.hi[i]:
                return False
        return all(self.contains_point(v) for v in other.vertices)

    def directions(self) -> list[Point]:
        v0 = self.vertices[0]
        red, _ = rref([sub(v, v0) for v in self.vertices[1:]]) if self.dim else ([], [])
        return [tuple(r) for r in red]

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1


def _chart_facets(pts: list[tuple], k: int) -> list[Constraint]:
    """Facet inequalities of a full-dimensional point set in R^k."""
    found = set()
    for combo in combinations(range(len(pts)), k):
        base = pts[combo[0]]
        rows = [sub(pts[i], base) for i in combo[1:]]
        ns = nullspace(rows, k) if rows else nullspace([], k)
        if len(ns) != 1:
            continue
        normal = ns[0]
        const = -dot(normal, base)
        vals = [dot(normal, p) + const for p in pts]
        if all(v >= 0 for v in vals):
            found.add(primitive(normal, const))
        elif all(v <= 0 for v in vals):
            found.add(primitive([-x for x in normal], -const))
    return sorted(found)


# -- H-representation to V-representation --------------------------------------------

def _reduce_equations(eqs: Sequence[Constraint], n: int):
    """Parametrize {x : eqs} as x0 + N t.  Returns (x0, N columns) or None if empty."""
    if not eqs:
        return tuple(Fraction(0) for _ in range(n)), [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    aug = [list(a) + [-c] for a, c in eqs]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x0 = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x0[p] = row[n]
    basis = nullspace([row[:n] for row in red], n)
    return tuple(x0), basis


def _solve_int(rows, rhs):
    """Integer solve of a square system: (numerators, positive denominator) or None."""
    k = len(rows)
    if k == 1:
        d = rows[0][0]
        if d == 0:
            return None
        return ((rhs[0],), d) if d > 0 else ((-rhs[0],), -d)
    if k == 2:
        (a, b), (c, e) = rows
        d = a * e - b * c
        if d == 0:
            return None
        x, y = rhs[0] * e - b * rhs[1], a * rhs[1] - c * rhs[0]
        return ((x, y), d) if d > 0 else ((-x, -y), -d)
    # Bareiss fraction-free elimination
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    prev = 1
    for c in range(k):
        piv = next((i for i in range(c, k) if m[i][c] != 0), None)
        if piv is None:
            return None
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
        for i in range(c + 1, k):
            m[i] = [(m[c][c] * m[i][j] - m[i][c] * m[c][j]) // prev for j in range(k + 1)]
        prev = m[c][c]
    d = m[k - 1][k - 1]
    # back substitution with common denominator d
    x = [0] * k
    for i in range(k - 1, -1, -1):
        s = m[i][k] * d - sum(m[i][j] * x[j] for j in range(i + 1, k))
        x[i] = s // m[i][i]
    if d < 0:
        return tuple(-v for v in x), -d
    return tuple(x), d


def _enumerate(ineqs: list[Constraint], k: int) -> list[tuple]:
    """Vertices of {t in R^k : a.t + c >= 0} by exhaustive k-subsets (integer data)."""
    if k == 0:
        return [()] if all(c >= 0 for _, c in ineqs) else []
    found = set()
    for combo in combinations(ineqs, k):
        sol = _solve_int([a for a, _ in combo], [-c for _, c in combo])
        if sol is None:
            continue
        nums, den = sol
        g = den
        for v in nums:
            g = gcd(g, v)
        if g > 1:
            nums, den = tuple(v // g for v in nums), den // g
        if (nums, den) in found:
            continue
        if all(sum(x * y for x, y in zip(a, nums)) + c * den >= 0 for a, c in ineqs):
            found.add((nums, den))
    return sorted(tuple(Fraction(v, den) for v in nums) for nums, den in found)


def _restrict(eqs, ineqs, n):
    """Substitute the equation parametrization into the inequalities."""
    red = _reduce_equations(eqs, n)
    if red is None:
        return None
    x0, basis = red
    k = len(basis)
    reduced = set()
    for a, c in ineqs:
        coeffs = tuple(dot(a, b) for b in basis)
        const = dot(a, x0) + c
        if all(x == 0 for x in coeffs):
            if const < 0:
                return None
            continue
        reduced.add(primitive(coeffs, const))
    return x0, basis, k, sorted(reduced)


def _fm_feasible(ineqs: list[tuple], k: int) -> bool:
    """Fourier-Motzkin feasibility of {a.t + c >= 0}."""
    rows = [(list(map(Fraction, a)), Fraction(c)) for a, c in ineqs]
    for var in range(k):
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        zero = [r for r in rows if r[0][var] == 0]
        new = zero[:]
        for pa, pc in pos:
            for na, nc in neg:
                fp, fn = pa[var], -na[var]
                new.append(([fn * x + fp * y for x, y in zip(pa, na)], fn * pc + fp * nc))
        rows = new
    return all(c >= 0 for _, c in rows)


def vertices_from_constraints(eqs, ineqs, n: int, check_bounded: bool = True) -> list[Point]:
    r = _restrict(eqs, ineqs, n)
    if r is None:
        raise EmptyCell("infeasible constraints")
    x0, basis, k, reduced = r
    if check_bounded and k:
        box = [(tuple(int(i == j) * s for j in range(k)), 1) for i in range(k) for s in (1, -1)]
        rec = [(a, 0) for a, _ in reduced] + box
        if any(any(x != 0 for x in t) for t in _enumerate(rec, k)):
            if _fm_feasible(reduced, k):
                raise Unbounded("constraint set has a nontrivial recession cone")
            raise EmptyCell("infeasible constraints")
    ts = _enumerate(reduced, k)
    if not ts:
        raise EmptyCell("infeasible constraints")
    return [tuple(x + sum((t[j] * basis[j][i] for j in range(k)), Fraction(0)) for i, x in enumerate(x0)) for t in ts]


def canonicalize(hrep: Iterable[tuple], equations: Iterable[tuple] = (), n: int | None = None) -> ConvexCell:
    """Build a cell from inequalities ``(coeffs, const)`` meaning coeffs.x + const >= 0.

    Raises EmptyCell or Unbounded.
    """
    ineqs = [primitive(a, c) for a, c in hrep]
    eqs = [primitive(a, c) for a, c in equations]
    if n is None:
        sample = (ineqs or eqs)
        if not sample:
            raise ValueError("ambient dimension unknown")
        n = len(sample[0][0])
    return ConvexCell.hull(vertices_from_constraints(eqs, ineqs, n))


def intersect(c1: ConvexCell, c2: ConvexCell) -> ConvexCell | None:
    """Canonical cell of c1 & c2, or None when the intersection is empty."""
    if c1.ambient_dim != c2.ambient_dim:
        raise DimensionMismatch("cells live in different ambient spaces")
    for i in range(c1.ambient_dim):
        if c1.hi[i] < c2.lo[i] or c2.hi[i] < c1.lo[i]:
            return None
    if c2.contains(c1):
        return c1
    if c1.contains(c2):
        return c2
    try:
        verts = vertices_from_constraints(c1.equations + c2.equations, c1.facets + c2.facets, c1.ambient_dim,
                                          check_bounded=False)
    except EmptyCell:
        return None
    return ConvexCell.hull(verts)


def apply_map(g, c: ConvexCell) -> ConvexCell:
    """Image of a cell under an affine map (AffineMap or AffineSignedIsometry)."""
    return ConvexCell.hull(g(v) for v in c.vertices)


def cone(apex: Sequence, base: ConvexCell) -> ConvexCell:
    """Convex hull of apex and base; warns DegenerateCone when apex lies in aff(base)."""
    apex = as_point(apex)
    if all(_eval(e, apex) == 0 for e in base.equations):
        warnings.warn(DegenerateCone(f"apex {apex} lies in the affine hull of the base"), stacklevel=2)
    return ConvexCell.hull(base.vertices + (apex,))


def relative_interior_point(c: ConvexCell) -> Point:
    return barycenter(c.vertices)


def cell_boundary_facets(c: ConvexCell) -> list[ConvexCell]:
    if c.dim == 0:
        raise ZeroDimensional("a point cell has empty cell-boundary")
    return [ConvexCell.hull(v for v in c.vertices if _eval(f, v) == 0) for f in c.facets]


def triangulate(c: ConvexCell) -> list[tuple]:
    """Pulling triangulation from the first vertex; each simplex is a vertex tuple."""
    if c.is_simplex():
        return [c.vertices]
    v0 = c.vertices[0]
    out = []
    for f in c.facets:
        if _eval(f, v0) == 0:
            continue
        face = ConvexCell.hull(v for v in c.vertices if _eval(f, v) == 0)
        out.extend((v0,) + s for s in triangulate(face))
    return out


def volume(c: ConvexCell, k: int, axes: Sequence[int] | None = None) -> Fraction:
    """Exact k-volume of a k-dimensional cell.

    The volume is measured after projecting onto ``axes`` (default: the cell's own
    chart axes).  This is the Euclidean volume whenever aff(c) is parallel to the
    coordinate plane of those axes; otherwise it is a fixed multiple of it, which is
    all that coverage accounting inside one affine subspace needs.
    """
    if k != c.dim:
        raise DimensionMismatch(f"cell has dimension {c.dim}, not {k}")
    if k == 0:
        return Fraction(1)
    axes = tuple(c.chart if axes is None else axes)
    total = Fraction(0)
    for simplex in triangulate(c):
        p0 = simplex[0]
        rows = [[p[a] - p0[a] for a in axes] for p in simplex[1:]]
        total += abs(det(rows))
    return total / factorial(k)


def map_is_injective_on(g, c: ConvexCell) -> bool:
    return as_affine(g).is_injective_on(c.directions())
