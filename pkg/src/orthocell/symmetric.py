"""Symmetric decompositions of cubes and orthotopes.

The half-space cells ``{x in I^d : a x_i >= b x_j}`` generate K°_d by intersecting
fundamental subsets; K_d(C) transports K° onto every face of a cube.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .complex import CellComplex, glue_refinements, pullback
from .exact import AffineMap, as_point, pad
from .polytope import ConvexCell, apply_map, intersect, vertices_from_constraints

SIGNS = (1, -1)


class IndexOutOfRange(ValueError):
    pass


class NotACube(ValueError):
    pass


class NotAnOrthotope(ValueError):
    pass


class NotStandard(ValueError):
    pass


@dataclass(frozen=True)
class HalfspaceConstraint:
    """The cell {x in I^d : a x_i >= b x_j}, indices 1-based.

    Equality and hashing go through :meth:`key`, which honours
    H_ij(a,b) = H_ji(-b,-a) and identifies all vacuous H_ii(a,a) with I^d.
    """

    d: int
    i: int
    j: int
    a: int
    b: int

    def __post_init__(self):
        if not (1 <= self.i <= self.d and 1 <= self.j <= self.d):
            raise IndexOutOfRange(f"indices ({self.i},{self.j}) outside 1..{self.d}")
        if self.a not in SIGNS or self.b not in SIGNS:
            raise ValueError("a and b must be +1 or -1")

    def key(self) -> tuple:
        if self.i == self.j and self.a == self.b:
            return (self.d, "full")
        return (self.d,) + min((self.i, self.j, self.a, self.b), (self.j, self.i, -self.b, -self.a))

    def __eq__(self, other):
        return isinstance(other, HalfspaceConstraint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_vacuous(self) -> bool:
        return self.i == self.j and self.a == self.b

    def inequality(self, n: int) -> tuple:
        coeffs = [0] * n
        coeffs[self.i - 1] += self.a
        coeffs[self.j - 1] -= self.b
        return tuple(coeffs), 0


def halfspace_family(d: int) -> list[HalfspaceConstraint]:
    """The distinct members of H^d."""
    seen = {}
    for i, j, a, b in product(range(1, d + 1), range(1, d + 1), SIGNS, SIGNS):
        h = HalfspaceConstraint(d, i, j, a, b)
        seen.setdefault(h, h)
    return list(seen.values())


def _cube_constraints(d: int, n: int) -> tuple[list, list]:
    ineqs = []
    for i in range(d):
        for s in SIGNS:
            coeffs = [0] * n
            coeffs[i] = -s
            ineqs.append((tuple(coeffs), 1))
    eqs = []
    for i in range(d, n):
        coeffs = [0] * n
        coeffs[i] = 1
        eqs.append((tuple(coeffs), 0))
    return ineqs, eqs


def intersect_halfspaces(members: Iterable[HalfspaceConstraint], d: int, n: int | None = None) -> ConvexCell:
    n = d if n is None else n
    ineqs, eqs = _cube_constraints(d, n)
    ineqs += [h.inequality(n) for h in members if not h.is_vacuous()]
    return ConvexCell.hull(vertices_from_constraints(eqs, ineqs, n, check_bounded=False))


def halfspace(d: int, i: int, j: int, a: int, b: int, n: int | None = None) -> ConvexCell:
    return intersect_halfspaces([HalfspaceConstraint(d, i, j, a, b)], d, n)


def _pair_options(d: int, i: int, j: int):
    return ((HalfspaceConstraint(d, i, j, 1, -1), HalfspaceConstraint(d, i, j, -1, 1)),
            (HalfspaceConstraint(d, i, j, 1, 1), HalfspaceConstraint(d, i, j, -1, -1)))


def is_fundamental(members: Iterable[HalfspaceConstraint], d: int | None = None) -> bool:
    members = set(members)
    if d is None:
        ds = {h.d for h in members}
        if len(ds) != 1:
            return False
        d = ds.pop()
    if any(h.d != d for h in members):
        raise ValueError("constraints of mixed dimension")
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            for opts in _pair_options(d, i, j):
                if not any(o in members for o in opts):
                    return False
    return True


def minimal_fundamental_subsets(d: int) -> set[frozenset]:
    """Choice-function subsets: one member of every required pair."""
    pairs = [opts for i in range(1, d + 1) for j in range(i, d + 1) for opts in _pair_options(d, i, j)]
    return {frozenset(choice) for choice in product(*pairs)}


def intersection_closure(cells: Iterable[ConvexCell]) -> set[ConvexCell]:
    closed = set(cells)
    frontier = list(closed)
    while frontier:
        current = sorted(closed)
        new = set()
        for a in frontier:
            for b in current:
                c = intersect(a, b)
                if c is not None and c not in closed:
                    new.add(c)
        closed |= new
        frontier = sorted(new)
    return closed


@lru_cache(maxsize=None)
def build_Ko(d: int) -> frozenset:
    """K°_d as a set of cells in R^d (K°_0 = {{0}} in R^0 is returned as {()}).

    Minimal fundamental subsets are intersected and then closed under pairwise
    intersection; every fundamental subset contains a minimal one and unions of
    fundamental subsets are fundamental, so this is the whole family.
    """
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    if d == 0:
        return frozenset({ConvexCell.point(())})
    seeds = {intersect_halfspaces(s, d) for s in minimal_fundamental_subsets(d)}
    return frozenset(intersection_closure(seeds))


def build_Ko_exhaustive(d: int) -> frozenset:
    """K°_d straight from the definition: all fundamental subsets of H^d (d <= 2)."""
    family = halfspace_family(d)
    out = set()
    for r in range(len(family) + 1):
        for sub in combinations(family, r):
            if is_fundamental(sub, d):
                out.add(intersect_halfspaces(sub, d))
    return frozenset(out)


# -- cubes and orthotopes ----------------------------------------------------------------

@dataclass(frozen=True)
class Orthotope:
    """Axis-aligned box prod [lo_i, hi_i] in R^n; axes with lo == hi are flat."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or any(a > b for a, b in zip(self.lo, self.hi)):
            raise NotAnOrthotope("need lo <= hi on every axis")

    @classmethod
    def make(cls, lo: Sequence, hi: Sequence) -> "Orthotope":
        return cls(as_point(lo), as_point(hi))

    @classmethod
    def standard(cls, sides: Sequence, n: int | None = None) -> "Orthotope":
        """prod [-a_i, a_i], zero padded to R^n."""
        a = as_point(sides)
        if any(x <= 0 for x in a):
            raise NotAnOrthotope("side lengths must be positive")
        n = len(a) if n is None else n
        return cls(pad([-x for x in a], n), pad(a, n))

    @classmethod
    def corner(cls, sides: Sequence) -> "Orthotope":
        """prod [0, a_i]."""
        a = as_point(sides)
        if any(x <= 0 for x in a):
            raise NotAnOrthotope("side lengths must be positive")
        return cls(tuple(Fraction(0) for _ in a), a)

    @classmethod
    def from_cell(cls, c: ConvexCell) -> "Orthotope":
        box = cls(c.lo, c.hi)
        if box.cell() != c:
            raise NotAnOrthotope(f"{c!r} is not an axis-aligned orthotope")
        return box

    @property
    def ambient_dim(self) -> int:
        return len(self.lo)

    @property
    def axes(self) -> tuple:
        return tuple(i for i, (a, b) in enumerate(zip(self.lo, self.hi)) if a < b)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def center(self) -> tuple:
        return tuple((a + b) / 2 for a, b in zip(self.lo, self.hi))

    @property
    def half_sides(self) -> tuple:
        return tuple((self.hi[i] - self.lo[i]) / 2 for i in self.axes)

    def is_cube(self) -> bool:
        return len(set(self.half_sides)) <= 1

    def is_standard(self) -> bool:
        return all(c == 0 for c in self.center)

    def cell(self) -> ConvexCell:
        return ConvexCell.box(self.lo, self.hi)

    def faces(self) -> list["Orthotope"]:
        """All faces (the orthotopic structure) as orthotopes."""
        choices = []
        for i in range(self.ambient_dim):
            a, b = self.lo[i], self.hi[i]
            choices.append([(a, b)] if a == b else [(a, b), (a, a), (b, b)])
        return [Orthotope(tuple(c[0] for c in combo), tuple(c[1] for c in combo)) for combo in product(*choices)]

    def chart_to_cube(self) -> AffineMap:
        """Conformal-per-axis map R^d -> R^n sending I^d onto this orthotope.

        Coordinate t of R^d goes to the t-th non-flat axis.
        """
        axes = self.axes
        n, d = self.ambient_dim, len(axes)
        rows = [[Fraction(0)] * d for _ in range(n)]
        for t, ax in enumerate(axes):
            rows[ax][t] = (self.hi[ax] - self.lo[ax]) / 2
        return AffineMap(tuple(tuple(r) for r in rows), self.center)

    def normalizing_map(self) -> AffineMap:
        """Full-dimensional orthotope onto I^n: x_i -> (x_i - c_i) / h_i."""
        if self.dim != self.ambient_dim:
            raise NotAnOrthotope("normalizing map needs a full-dimensional orthotope")
        h = [(b - a) / 2 for a, b in zip(self.lo, self.hi)]
        return AffineMap.scaling([1 / x for x in h], [-c / x for c, x in zip(self.center, h)])


def _as_orthotope(c) -> Orthotope:
    if isinstance(c, Orthotope):
        return c
    return Orthotope.from_cell(c)


def standard_cube(d: int, n: int | None = None) -> Orthotope:
    """I^d = [-1,1]^d inside R^n."""
    return Orthotope.standard([1] * d, n) if d else Orthotope(pad((), n or 0), pad((), n or 0))


def orthotope_structure(R) -> CellComplex:
    R = _as_orthotope(R)
    return CellComplex.of(R.ambient_dim, [f.cell() for f in R.faces()], space=R.cell())


def cube_structure(d: int, C=None) -> CellComplex:
    C = standard_cube(d) if C is None else _as_orthotope(C)
    if C.dim != d or not C.is_cube():
        raise NotACube(f"{C} is not a {d}-dimensional cube")
    return orthotope_structure(C)


def Ko_on(face: Orthotope) -> list[ConvexCell]:
    """K°_k(face) for a k-dimensional cube face, transported from I^k."""
    if not face.is_cube():
        raise NotACube(f"{face} is not a cube")
    chart = face.chart_to_cube()
    return [apply_map(chart, c) for c in build_Ko(face.dim)]


def build_K(d: int, C=None) -> CellComplex:
    """Symmetric decomposition K_d(C): K° of every face of the cube C."""
    C = standard_cube(d) if C is None else _as_orthotope(C)
    if C.dim != d or not C.is_cube():
        raise NotACube(f"{C} is not a {d}-dimensional cube")
    cells = set()
    for f in C.faces():
        cells.update(Ko_on(f))
    return CellComplex.of(C.ambient_dim, cells, space=C.cell())


def boundary_K(d: int, C=None) -> CellComplex:
    """K_d(C) minus K°_d(C), a decomposition of the cell-boundary of C."""
    C = standard_cube(d) if C is None else _as_orthotope(C)
    K = build_K(d, C)
    inner = set(Ko_on(C))
    facets = tuple(f.cell() for f in C.faces() if f.dim == d - 1)
    return CellComplex.of(C.ambient_dim, [c for c in K.cells if c not in inner], space=facets)


def cubic_stretching(Qbox) -> AffineMap:
    """x_i -> x_i / a_i for Q = prod [-a_i, a_i]; identity on flat axes."""
    Qbox = _as_orthotope(Qbox)
    if not Qbox.is_standard():
        raise NotStandard(f"{Qbox} is not centred at the origin")
    factors = [1 / Qbox.hi[i] if Qbox.hi[i] > 0 else Fraction(1) for i in range(Qbox.ambient_dim)]
    return AffineMap.scaling(factors)


def subcube(n: int, l: int, alpha: Sequence[int]) -> Orthotope:
    if len(alpha) != n or any(not 0 <= a < l for a in alpha):
        raise IndexOutOfRange(f"alpha {tuple(alpha)} outside {{0..{l - 1}}}^{n}")
    lo = [Fraction(2 * a - l, l) for a in alpha]
    hi = [Fraction(2 * a - l + 2, l) for a in alpha]
    return Orthotope(tuple(lo), tuple(hi))


def subcube_grid(n: int, l: int) -> CellComplex:
    """Faces of all subcubes C^n_alpha: the cube grid of I^n at resolution l."""
    faces = set()
    for alpha in product(range(l), repeat=n):
        faces.update(f.cell() for f in subcube(n, l, alpha).faces())
    return CellComplex.of(n, faces, space=standard_cube(n).cell())


def build_K_subdivided(n: int, l: int) -> CellComplex:
    """K_{n,l}: K_n of every subcube, glued along shared faces."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    grid = subcube_grid(n, l)
    per_cell = {c: build_K(c.dim, Orthotope(c.lo, c.hi)) for c in grid.cells}
    return glue_refinements(grid, per_cell)


def build_K_orthotope(R, l: int = 1) -> CellComplex:
    """K_n(R) (l = 1) or K_{n,l}(R) for a full-dimensional orthotope R.

    Pulls back the cube decomposition through the map R -> I^n.  For a standard
    orthotope this map is the cubic stretching; for prod [0, a_i] it first centres.
    """
    R = _as_orthotope(R)
    base = build_K(R.ambient_dim) if l == 1 else build_K_subdivided(R.ambient_dim, l)
    return pullback(R.normalizing_map(), base)
