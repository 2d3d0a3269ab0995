"""Cube and orthotope symmetry groups, family invariance and the stabilizer property."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd
from typing import Iterable, Sequence

from .complex import CellComplex, VerificationReport
from .exact import AffineSignedIsometry
from .parallel import pmap
from .polytope import ConvexCell
from .symmetric import _as_orthotope


@dataclass(frozen=True)
class SymmetryGroup:
    ambient_dim: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def closure_defects(self) -> list[str]:
        """Group-axiom violations (empty when the elements form a group)."""
        members = set(self.elements)
        out = []
        if AffineSignedIsometry.identity(self.ambient_dim) not in members:
            out.append("identity missing")
        for g in self.elements:
            if g.inverse() not in members:
                out.append(f"inverse of {g} missing")
            for h in self.elements:
                if g.compose(h) not in members:
                    out.append(f"{g} o {h} missing")
        return out


def enumerate_cube_symmetries(d: int, n: int | None = None) -> SymmetryGroup:
    """Sym(I^d): signed permutations of the first d axes, identity on the rest."""
    n = d if n is None else n
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    return _group(n, _signed_perms(n, d, lambda perm: True))


def _signed_perms(n: int, d: int, keep) -> list[AffineSignedIsometry]:
    out = []
    for perm in permutations(range(d)):
        if not keep(perm):
            continue
        for signs in product((1, -1), repeat=d):
            out.append(AffineSignedIsometry.make(perm + tuple(range(d, n)), signs + (1,) * (n - d)))
    return out


def _group(n: int, elements: Iterable[AffineSignedIsometry]) -> SymmetryGroup:
    return SymmetryGroup(n, tuple(sorted(set(elements), key=lambda g: (g.perm, g.signs, g.translation))))


def _conjugate_by_translation(g: AffineSignedIsometry, c: Sequence) -> AffineSignedIsometry:
    """t_c o g o t_-c."""
    t = AffineSignedIsometry.translation_by(c)
    return t.compose(g).compose(t.inverse())


def enumerate_orthotope_symmetries(R) -> SymmetryGroup:
    """Isometries of a full-dimensional orthotope: sign flips and side-preserving swaps.

    Off-centre boxes such as prod [0, a_i] get the centred group conjugated to their centre.
    """
    R = _as_orthotope(R)
    if R.dim != R.ambient_dim:
        raise ValueError("orthotope symmetries need a full-dimensional orthotope")
    n = R.ambient_dim
    sides = [b - a for a, b in zip(R.lo, R.hi)]
    linear = _signed_perms(n, n, lambda perm: all(sides[i] == sides[perm[i]] for i in range(n)))
    c = R.center
    if any(c):
        linear = [_conjugate_by_translation(g, c) for g in linear]
    return _group(n, linear)


def _cells(F) -> list[ConvexCell]:
    return list(F.cells) if isinstance(F, CellComplex) else list(F)


def _support(F) -> tuple:
    if isinstance(F, CellComplex):
        return F.space_pieces()
    cells = _cells(F)
    return tuple(c for c in cells if not any(o != c and o.contains(c) for o in cells))


def check_family_invariance(T, F) -> bool:
    """True iff T maps |F| onto itself and {T^-1(c) : c in F} = F.

    A map that does not preserve |F| gives False.
    """
    support = {p.vertices for p in _support(F)}
    if {tuple(sorted(T(v) for v in p)) for p in support} != support:
        return False
    inv = T.inverse()
    keys = {c.vertices for c in _cells(F)}
    return {tuple(sorted(inv(v) for v in k)) for k in keys} == keys


def random_relint_points(c: ConvexCell, count: int, rng: random.Random, weight_budget: int = 1000) -> list[tuple]:
    """Strictly positive rational convex combinations of all vertices.

    The weights share a denominator of at most ``weight_budget``.
    """
    m = len(c.vertices)
    top = max(1, weight_budget // m)
    out = []
    for _ in range(count):
        w = [rng.randint(1, top) for _ in range(m)]
        s = sum(w)
        out.append(tuple(sum((Fraction(wi) * v[i] for wi, v in zip(w, c.vertices)), Fraction(0)) / s
                         for i in range(c.ambient_dim)))
    return out


def sample_points(cells: Sequence[ConvexCell], samples: int, seed: int) -> list[list[tuple]]:
    """Vertices plus ``samples`` seeded interior points, per cell in the given order."""
    rng = random.Random(seed)
    out = []
    for c in cells:
        pts = list(c.vertices)
        if c.dim > 0:
            pts += random_relint_points(c, samples, rng)
        out.append(pts)
    return out


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def moved_hits(cell: ConvexCell, points: Sequence[tuple], elements: Sequence[AffineSignedIsometry]) -> list:
    """(g, x) pairs with x a sample, g(x) != x and g(x) in the cell; first hit per g.

    Works on integer numerators over a common denominator, which is exact and
    much faster than Fraction arithmetic for these tight loops.
    """
    den = _lcm([x.denominator for p in points for x in p] + [t.denominator for g in elements for t in g.translation])
    ipts = [tuple(int(x * den) for x in p) for p in points]
    n = cell.ambient_dim
    facets = [(a, c * den) for a, c in cell.facets]
    eqs = [(a, c * den) for a, c in cell.equations]
    lo = [int(x * den) for x in cell.lo]
    hi = [int(x * den) for x in cell.hi]
    out = []
    for g in elements:
        shift = [int(t * den) for t in g.translation]
        perm, signs = g.perm, g.signs
        for X, x in zip(ipts, points):
            Y = shift[:]
            for i in range(n):
                Y[perm[i]] += signs[i] * X[i]
            if tuple(Y) == X:
                continue
            if any(Y[i] < lo[i] or Y[i] > hi[i] for i in range(n)):
                continue
            if all(sum(a * y for a, y in zip(co, Y)) + c == 0 for co, c in eqs) and \
                    all(sum(a * y for a, y in zip(co, Y)) + c >= 0 for co, c in facets):
                out.append((g, x))
                break
    return out


def _stabilizer_job(args):
    cell, points, elements = args
    return [(cell, str(g), x) for g, x in moved_hits(cell, points, elements)]


def check_stabilizer_property(F, G: SymmetryGroup, samples: int = 100, seed: int = 0) -> VerificationReport:
    """For H in F, g in G and sampled x in H: g(x) in H forces g(x) = x."""
    cells = sorted(_cells(F))
    pts = sample_points(cells, samples, seed)
    results = pmap(_stabilizer_job, [(c, p, G.elements) for c, p in zip(cells, pts)])
    rep = VerificationReport(f"stabilizer property ({len(cells)} cells, {G.order} symmetries, seed {seed})")
    witnesses = [f"H={h!r} g={g} x=({', '.join(map(str, x))})" for r in results for h, g, x in r]
    rep.add("g(x) in H implies g(x) = x", witnesses,
            detail=f"{sum(len(p) for p in pts)} sample points")
    return rep


__all__ = [
    "SymmetryGroup",
    "enumerate_cube_symmetries",
    "enumerate_orthotope_symmetries",
    "check_family_invariance",
    "check_stabilizer_property",
    "random_relint_points",
    "sample_points",
]
