"""Orthotopic crystallographic groups.

A group is stored as its translation lattice diag(a_1..a_n) Z^n together with a
finite set of coset representatives for the point part.  The group is infinite,
so every search runs over the finitely many elements whose tile lies in a shell
of lattice cells around the fundamental domain.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Sequence

from .complex import VerificationReport
from .exact import AffineSignedIsometry, as_point
from .parallel import pmap
from .polytope import ConvexCell, apply_map, intersect
from .symmetric import Orthotope, _as_orthotope
from .symmetry import moved_hits, sample_points


class IncompatibleGenerator(ValueError):
    def __init__(self, msg: str, witness):
        super().__init__(f"{msg}: {witness}")
        self.witness = witness


class NotFound(LookupError):
    pass


class NotUnique(LookupError):
    pass


class NotAFacet(ValueError):
    pass


def _parse_lattice(sigma) -> tuple:
    rows = list(sigma)
    if rows and isinstance(rows[0], (list, tuple)):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("lattice matrix must be square")
        if any(rows[i][j] != 0 for i in range(n) for j in range(n) if i != j):
            raise ValueError("lattice matrix must be diagonal")
        rows = [rows[i][i] for i in range(n)]
    diag = as_point(rows)
    if not diag or any(a <= 0 for a in diag):
        raise ValueError("lattice entries must be positive")
    return diag


@dataclass(frozen=True)
class OrthotopicGroup:
    """Translations by diag(lattice) Z^n together with point generators.

    ``coset_reps`` holds one element per linear part, its translation reduced
    into prod [0, a_i).
    """

    lattice: tuple
    point_generators: tuple
    fundamental_domain: Orthotope
    coset_reps: tuple = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return len(self.lattice)

    def reduce(self, g: AffineSignedIsometry) -> AffineSignedIsometry:
        t = tuple(x - a * floor(x / a) for x, a in zip(g.translation, self.lattice))
        return AffineSignedIsometry(g.perm, g.signs, t)

    def lattice_vector(self, v: Sequence[int]) -> tuple:
        return tuple(a * k for a, k in zip(self.lattice, v))

    def in_lattice(self, t: Sequence) -> bool:
        return all((x / a).denominator == 1 for x, a in zip(t, self.lattice))

    def contains(self, g: AffineSignedIsometry) -> bool:
        for r in self.coset_reps:
            if r.linear_key() == g.linear_key():
                return self.in_lattice(tuple(x - y for x, y in zip(g.translation, r.translation)))
        return False

    def is_translation_group(self) -> bool:
        return len(self.coset_reps) == 1

    def tile(self, g: AffineSignedIsometry, Q=None) -> ConvexCell:
        Q = self.fundamental_domain if Q is None else _as_orthotope(Q)
        return apply_map(g, Q.cell())

    def elements_near(self, Q=None, radius: int = 1) -> list[AffineSignedIsometry]:
        """Elements whose tile g(Q) lies in Q grown by ``radius`` side lengths on every side."""
        Q = self.fundamental_domain if Q is None else _as_orthotope(Q)
        sides = [b - a for a, b in zip(Q.lo, Q.hi)]
        elo = [a - radius * s for a, s in zip(Q.lo, sides)]
        ehi = [b + radius * s for b, s in zip(Q.hi, sides)]
        out = []
        for r in self.coset_reps:
            img = [r(v) for v in (Q.lo, Q.hi)]
            blo = [min(p[i] for p in img) for i in range(self.dim)]
            bhi = [max(p[i] for p in img) for i in range(self.dim)]
            ranges = []
            for i, a in enumerate(self.lattice):
                ranges.append(range(ceil((elo[i] - blo[i]) / a), floor((ehi[i] - bhi[i]) / a) + 1))
            for v in product(*ranges):
                out.append(AffineSignedIsometry.translation_by(self.lattice_vector(v)).compose(r))
        return sorted(out, key=lambda g: (g.translation, g.perm, g.signs))


def _closure(lattice: tuple, gens: Sequence[AffineSignedIsometry]) -> tuple:
    n = len(lattice)
    grp = OrthotopicGroup(lattice, tuple(gens), Orthotope.corner(lattice))
    ident = AffineSignedIsometry.identity(n)
    reps = {ident.linear_key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                h = grp.reduce(g.compose(r))
                old = reps.get(h.linear_key())
                if old is None:
                    reps[h.linear_key()] = h
                    nxt.append(h)
                elif old != h:
                    diff = tuple(x - y for x, y in zip(h.translation, old.translation))
                    raise IncompatibleGenerator("group contains a translation outside the lattice", diff)
        frontier = nxt
    return tuple(sorted(reps.values(), key=lambda g: (g.perm, g.signs)))


def make_orthotopic_group(sigma, point_generators: Sequence[AffineSignedIsometry] = (), Q=None) -> OrthotopicGroup:
    """Group generated by the lattice translations and ``point_generators``.

    ``Q`` defaults to prod [0, a_i].  Raises IncompatibleGenerator when a generator
    does not normalise the lattice or the generated group has extra translations.
    """
    lattice = _parse_lattice(sigma)
    n = len(lattice)
    gens = []
    for g in point_generators:
        if g.dim != n:
            raise IncompatibleGenerator("generator acts on the wrong dimension", g)
        for i in range(n):
            if lattice[g.perm[i]] != lattice[i]:
                raise IncompatibleGenerator("conjugating a lattice translation leaves the lattice", str(g))
        gens.append(AffineSignedIsometry(g.perm, g.signs, as_point(g.translation)))
    reps = _closure(lattice, gens)
    Qbox = Orthotope.corner(lattice) if Q is None else _as_orthotope(Q)
    if Qbox.ambient_dim != n or Qbox.dim != n:
        raise ValueError("fundamental domain must be a full-dimensional orthotope")
    return OrthotopicGroup(lattice, tuple(gens), Qbox, reps)


def torus_group(n: int, sides: Sequence | None = None) -> OrthotopicGroup:
    """Gamma_tor: pure translations by diag(sides) Z^n."""
    return make_orthotopic_group(sides if sides is not None else [1] * n)


def _open_boxes_overlap(a: ConvexCell, b: ConvexCell) -> bool:
    return all(max(a.lo[i], b.lo[i]) < min(a.hi[i], b.hi[i]) for i in range(a.ambient_dim))


def verify_normal_fundamental_domain(G: OrthotopicGroup, Q=None, radius: int = 1) -> VerificationReport:
    """Tiling, disjointness and face-to-face checks inside a shell of ``radius`` cells."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    Q = G.fundamental_domain if Q is None else _as_orthotope(Q)
    qc = Q.cell()
    n = G.dim
    sides = [b - a for a, b in zip(Q.lo, Q.hi)]
    elements = G.elements_near(Q, radius)
    tiles = [(g, G.tile(g, Q)) for g in elements]
    ident = AffineSignedIsometry.identity(n)
    rep = VerificationReport(f"normal fundamental domain (radius {radius})")

    rep.add("distinct elements have disjoint tile interiors",
            [f"{g}: {t!r} overlaps Q" for g, t in tiles if g != ident and _open_boxes_overlap(t, qc)])

    # volume accounting on the shell box; tiles are axis boxes
    shell = Fraction(1)
    for s in sides:
        shell *= (2 * radius + 1) * s
    total = Fraction(0)
    for _, t in tiles:
        vol = Fraction(1)
        for lo, hi in zip(t.lo, t.hi):
            vol *= hi - lo
        total += vol
    rep.add("tiles cover the shell", [] if total == shell else [f"tile volume {total} != shell volume {shell}"])

    expect = set()
    for v in product(range(-radius, radius + 1), repeat=n):
        off = [s * k for s, k in zip(sides, v)]
        expect.add(ConvexCell.box([a + o for a, o in zip(Q.lo, off)], [b + o for b, o in zip(Q.hi, off)]))
    found = {t for _, t in tiles}
    rep.add("tiles form the lattice Q + diag(sides) Z^n",
            [f"unexpected tile {t!r}" for t in sorted(found - expect)] +
            [f"missing tile {t!r}" for t in sorted(expect - found)])

    faces = {f.cell() for f in Q.faces()}
    bad = []
    for g, t in tiles:
        p = intersect(t, qc)
        if p is None or g == ident:
            continue
        tfaces = {apply_map(g, f) for f in faces}
        if p not in faces or p not in tfaces:
            bad.append(f"{g}: Q & g(Q) = {p!r} is not a common face")
    rep.add("adjacent tiles meet in common faces", bad)
    return rep


def adjacency_transformation(G: OrthotopicGroup, F, Q=None) -> AffineSignedIsometry:
    """The unique g in the group with g(Q) & Q = F, for a facet F of Q."""
    Q = G.fundamental_domain if Q is None else _as_orthotope(Q)
    F = F.cell() if isinstance(F, Orthotope) else F
    qc = Q.cell()
    if F not in {f.cell() for f in Q.faces()} or F.dim != G.dim - 1:
        raise NotAFacet(f"{F!r} is not a facet of {qc!r}")
    hits = [g for g in G.elements_near(Q, 1) if intersect(G.tile(g, Q), qc) == F]
    if not hits:
        raise NotFound(f"no group element carries Q onto the neighbour across {F!r}")
    if len(hits) > 1:
        raise NotUnique(f"{len(hits)} elements share the facet {F!r}: {', '.join(map(str, hits))}")
    return hits[0]


def orbit_points_in(G: OrthotopicGroup, x: Sequence, Q=None) -> list[tuple]:
    """All points of the orbit of x that lie in the closed box Q."""
    Q = G.fundamental_domain if Q is None else _as_orthotope(Q)
    x = as_point(x)
    out = set()
    for r in G.coset_reps:
        y = r(x)
        ranges = [range(ceil((Q.lo[i] - y[i]) / a), floor((Q.hi[i] - y[i]) / a) + 1)
                  for i, a in enumerate(G.lattice)]
        for v in product(*ranges):
            out.add(tuple(c + a * k for c, a, k in zip(y, G.lattice, v)))
    return sorted(out)


def canonicalize_point(G: OrthotopicGroup, x: Sequence, Q=None) -> tuple:
    """Lexicographically least orbit point in the closed fundamental domain."""
    pts = orbit_points_in(G, x, Q)
    if not pts:
        raise ValueError("the orbit misses Q, so Q is not a fundamental domain")
    return pts[0]


def _orbit_job(args):
    cell, points, elements = args
    return [(cell, str(g), x) for g, x in moved_hits(cell, points, elements)]


def orbit_intersection_check(G: OrthotopicGroup, K, samples: int = 100, seed: int = 0,
                             Q=None, radius: int = 1) -> VerificationReport:
    """For H in K and sampled x in H: g(x) in H forces g(x) = x, over the shell."""
    cells = sorted(K.cells if hasattr(K, "cells") else K)
    elements = G.elements_near(Q, radius)
    pts = sample_points(cells, samples, seed)
    results = pmap(_orbit_job, [(c, p, elements) for c, p in zip(cells, pts)])
    rep = VerificationReport(f"orbit intersection ({len(cells)} cells, {len(elements)} shell elements, seed {seed})")
    rep.add("H meets each orbit in at most one point",
            [f"H={h!r} g={g} x=({', '.join(map(str, x))})" for r in results for h, g, x in r],
            detail=f"{sum(len(p) for p in pts)} sample points")
    return rep
