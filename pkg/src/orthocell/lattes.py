"""Quotient complexes on R^n / Gamma and orthotopic Lattes maps x -> lambda x.

Quotient cells are never realised point-wise.  A cell of the quotient is the
orbit class of a cell of K_n(Q) (or K_{n,lambda}(Q)); its key is the least sorted
vertex tuple among the images g(c) that stay inside Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Sequence

from .complex import (
    CellComplex,
    VerificationReport,
    candidate_pairs,
    relints_meet,
    verify_cell_decomposition,
    verify_refinement,
)
from .crystal import OrthotopicGroup, canonicalize_point
from .exact import AffineMap, AffineSignedIsometry, as_point, barycenter
from .polytope import ConvexCell, apply_map, intersect
from .symmetric import build_K_orthotope


class WitnessNotFound(LookupError):
    pass


def _lambda(lam) -> int:
    if isinstance(lam, bool):
        raise ValueError("lambda must be a positive integer")
    if isinstance(lam, Fraction):
        if lam.denominator != 1:
            raise ValueError(f"lambda must be a positive integer, got {lam}")
        lam = lam.numerator
    if not isinstance(lam, int) or lam < 1:
        raise ValueError(f"lambda must be a positive integer, got {lam!r}")
    return lam


def _conjugate_scaling(g: AffineSignedIsometry, lam: int) -> AffineSignedIsometry:
    """(lambda id) o g o (lambda id)^-1: same linear part, translation scaled."""
    return AffineSignedIsometry(g.perm, g.signs, tuple(lam * t for t in g.translation))


def verify_conjugation(G: OrthotopicGroup, lam) -> bool:
    """True iff A G A^-1 is contained in G for A = lambda id, checked on generators."""
    lam = _lambda(lam)
    gens = [AffineSignedIsometry.translation_by(G.lattice_vector([int(i == j) for j in range(G.dim)]))
            for i in range(G.dim)]
    gens += list(G.point_generators)
    return all(G.contains(_conjugate_scaling(g, lam)) for g in gens)


# -- quotient complexes --------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientCell:
    representative: ConvexCell
    orbit_key: tuple

    @property
    def dim(self) -> int:
        return self.representative.dim


@dataclass
class QuotientComplex:
    """Orbit classes of the cells of ``complex`` (a decomposition of Q)."""

    group: OrthotopicGroup
    complex: CellComplex
    classes: dict = field(default_factory=dict)    # key -> QuotientCell
    class_of: dict = field(default_factory=dict)   # cell -> key
    to_rep: dict = field(default_factory=dict)     # cell -> g with g(cell) = representative
    stray_images: list = field(default_factory=list)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for qc in self.classes.values():
            out[qc.dim] = out.get(qc.dim, 0) + 1
        return dict(sorted(out.items()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * m for k, m in self.counts().items())

    @property
    def dim(self) -> int:
        return self.complex.dim

    def top_keys(self) -> list:
        return sorted(k for k, qc in self.classes.items() if qc.dim == self.dim)

    def __len__(self):
        return len(self.classes)


def _inside(box: ConvexCell, pts) -> bool:
    return all(box.lo[i] <= p[i] <= box.hi[i] for p in pts for i in range(box.ambient_dim))


def quotient_complex(G: OrthotopicGroup, K: CellComplex, radius: int = 1) -> QuotientComplex:
    qbox = G.fundamental_domain.cell()
    by_key = {c.vertices: c for c in K.cells}
    elements = G.elements_near(None, radius)
    out = QuotientComplex(G, K)
    for c in K.cells:
        best = None
        for g in elements:
            img = [g(v) for v in c.vertices]
            if not _inside(qbox, img):
                continue
            key = tuple(sorted(img))
            if key not in by_key:
                out.stray_images.append((c, g))
                continue
            if best is None or key < best[0]:
                best = (key, g)
        key, g = best
        out.class_of[c] = key
        out.to_rep[c] = g
        if key not in out.classes:
            out.classes[key] = QuotientCell(by_key[key], key)
    return out


def verify_quotient_decomposition(D: QuotientComplex, radius: int = 1) -> VerificationReport:
    """Representative-level certificate that the orbit classes decompose R^n / G."""
    G, K = D.group, D.complex
    rep = VerificationReport("quotient cell decomposition")
    rep.extend(verify_cell_decomposition(K), "cells on Q ")
    rep.add("group images of cells inside Q are cells",
            [f"{g}({c!r}) is not a cell" for c, g in D.stray_images])

    ident = AffineSignedIsometry.identity(G.dim)
    elements = [g for g in G.elements_near(None, radius) if g != ident]
    bad = []
    for c in K.cells:
        for g in elements:
            img = [g(v) for v in c.vertices]
            if any(max(p[i] for p in img) < c.lo[i] or c.hi[i] < min(p[i] for p in img)
                   for i in range(c.ambient_dim)):
                continue
            p = intersect(c, apply_map(g.inverse(), c))
            if p is not None and any(g(v) != v for v in p.vertices):
                bad.append(f"{c!r} meets its image under {g} outside the fixed set")
    rep.add("projection is injective on every cell", bad)

    qbox = G.fundamental_domain.cell()
    bad = []
    for g in elements:
        z = intersect(apply_map(g, qbox), qbox)
        if z is None:
            continue
        near = set(K.within(z))
        near |= {apply_map(g, c) for c in K.within(apply_map(g.inverse(), z))}
        for a, b in candidate_pairs(sorted(near)):
            if relints_meet(a, b):
                bad.append(f"{a!r} and {b!r} overlap across {g}")
    rep.add("overlapping quotient interiors come from identified cells", bad)
    return rep


def build_quotient_complexes(G: OrthotopicGroup, lam, radius: int = 1) -> tuple[QuotientComplex, QuotientComplex]:
    """D0 from K_n(Q) and D1 from K_{n,lambda}(Q)."""
    lam = _lambda(lam)
    Q = G.fundamental_domain
    D0 = quotient_complex(G, build_K_orthotope(Q), radius)
    D1 = quotient_complex(G, build_K_orthotope(Q, lam), radius) if lam > 1 else D0
    return D0, D1


# -- the Lattes cell map -------------------------------------------------------------------

@dataclass(frozen=True)
class MapEntry:
    """lambda * sigma = gamma(tau); the witness is x -> gamma^-1(lambda x)."""

    sigma: ConvexCell
    tau: ConvexCell
    gamma: AffineSignedIsometry
    witness: AffineMap
    target: tuple


@dataclass
class LattesMapRecord:
    group: OrthotopicGroup
    lam: int
    D0: QuotientComplex
    D1: QuotientComplex
    table: dict   # D1 key -> MapEntry
    expanding: bool = False


def _witness(gamma: AffineSignedIsometry, lam: int) -> AffineMap:
    n = gamma.dim
    return gamma.inverse().as_affine().compose(AffineMap.scaling([lam] * n))


def _tiles_containing(G: OrthotopicGroup, pts: Sequence, radius: int):
    Q = G.fundamental_domain
    lo = [min(p[i] for p in pts) for i in range(G.dim)]
    hi = [max(p[i] for p in pts) for i in range(G.dim)]
    for r in G.coset_reps:
        img = [r(v) for v in (Q.lo, Q.hi)]
        rlo = [min(p[i] for p in img) for i in range(G.dim)]
        rhi = [max(p[i] for p in img) for i in range(G.dim)]
        ranges = []
        for i, a in enumerate(G.lattice):
            first = max(ceil((hi[i] - rhi[i]) / a), -radius)
            last = min(floor((lo[i] - rlo[i]) / a), radius)
            ranges.append(range(first, last + 1))
        for v in product(*ranges):
            yield AffineSignedIsometry.translation_by(G.lattice_vector(v)).compose(r)


def build_lattes_cell_map(G: OrthotopicGroup, lam, radius: int | None = None,
                          quotients: tuple | None = None) -> LattesMapRecord:
    """Cell table of the map induced by A = lambda id on R^n / G."""
    lam = _lambda(lam)
    if not verify_conjugation(G, lam):
        raise ValueError(f"lambda = {lam} does not conjugate the group into itself")
    radius = lam + 1 if radius is None else radius
    D0, D1 = quotients if quotients is not None else build_quotient_complexes(G, lam)
    k0 = {c.vertices: c for c in D0.complex.cells}
    table = {}
    for key, qc in sorted(D1.classes.items()):
        sigma = qc.representative
        scaled = [tuple(lam * x for x in v) for v in sigma.vertices]
        for gamma in _tiles_containing(G, scaled, radius):
            w = _witness(gamma, lam)
            img = tuple(sorted(w(v) for v in sigma.vertices))
            if img in k0:
                tau = k0[img]
                table[key] = MapEntry(sigma, tau, gamma, w, D0.class_of[tau])
                break
        else:
            raise WitnessNotFound(f"no group element brings {lam} * {sigma!r} back onto a cell of K_n(Q)")
    return LattesMapRecord(G, lam, D0, D1, table, expanding=lam > 1)


def verify_markov(record: LattesMapRecord) -> VerificationReport:
    """D1 refines D0 and the table is a cellular map of the quotient."""
    G, lam, D0, D1, table = record.group, record.lam, record.D0, record.D1, record.table
    rep = VerificationReport(f"cellular Markov partition (n={G.dim}, lambda={lam})")
    rep.add("A conjugates the group into itself", [] if verify_conjugation(G, lam) else [f"lambda={lam}"])
    rep.extend(verify_quotient_decomposition(D0), "D0 ")
    if D1 is not D0:
        rep.extend(verify_quotient_decomposition(D1), "D1 ")
    rep.extend(verify_refinement(D1.complex, D0.complex), "(a) D1 refines D0: ")

    rep.add("(b) every D1 cell has a table entry", [format_key(k) for k in D1.classes if k not in table])

    k0 = D0.complex.cell_set
    bad_img, bad_target = [], []
    for key, e in sorted(table.items()):
        img = tuple(sorted(e.witness(v) for v in e.sigma.vertices))
        if e.sigma.vertices != key:
            bad_img.append(f"entry {format_key(key)}: source {e.sigma!r} is not the class representative")
        elif e.tau not in k0 or img != e.tau.vertices or e.tau.dim != e.sigma.dim \
                or not e.witness.is_injective_on(e.sigma.directions()):
            bad_img.append(f"entry {format_key(key)}: witness sends {e.sigma!r} to {img}, not onto {e.tau!r}")
        if e.tau not in k0 or D0.class_of.get(e.tau) != e.target:
            bad_target.append(f"entry {format_key(key)}: target {format_key(e.target)} but tau {e.tau!r} lies in class "
                              f"{format_key(D0.class_of.get(e.tau))}")
    rep.add("(b) witness maps each representative onto a cell", bad_img)
    rep.add("(b) recorded target class matches the image", bad_target)

    canon = _canonizer(G)
    bad = []
    for key, e in sorted(table.items()):
        for x in e.sigma.vertices + (barycenter(e.sigma.vertices),):
            if canon(e.witness(x)) != canon(tuple(lam * c for c in x)):
                bad.append(f"entry {format_key(key)}: witness disagrees with A at {x}")
                break
    rep.add("(b) witnesses realise A modulo the group", bad)

    bad = []
    for c in D1.complex.cells:
        g = D1.to_rep[c]
        if not G.contains(_conjugate_scaling(g, lam)):
            bad.append(f"lambda {g} lambda^-1 is not in the group")
            continue
        e = table.get(D1.class_of[c])
        if e is None:
            continue
        for x in c.vertices:
            if canon(e.witness(g(x))) != canon(tuple(lam * v for v in x)):
                bad.append(f"{c!r}: image of {x} depends on the representative")
                break
    rep.add("(b) map is well defined on orbits", bad)

    bad = []
    for key, e in sorted(table.items()):
        for face in D1.complex.within(e.sigma):
            if face == e.sigma:
                continue
            img = tuple(sorted(e.witness(v) for v in face.vertices))
            target = D0.class_of.get(_cell_by_vertices(D0, img))
            sub = table.get(D1.class_of[face])
            if target is None or sub is None or target != sub.target:
                bad.append(f"entry {format_key(key)}: face {face!r} goes to {format_key(target)}, table says "
                           f"{format_key(sub.target) if sub else None}")
    rep.add("(b) assignments agree on shared faces", bad)

    zero = tuple(Fraction(0) for _ in range(G.dim))
    ok = True
    if any(qc.representative.vertices == (zero,) for qc in D1.classes.values()):
        e = table.get((zero,))
        ok = e is not None and e.target == D0.class_of.get(ConvexCell.point(zero))
    rep.add("(c) the class of the origin is fixed", [] if ok else ["f([0]) != [0]"])
    return rep


def format_key(key) -> str:
    """Readable orbit key, e.g. [(0,0), (1/2,0)]."""
    if key is None:
        return "None"
    return "[" + ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in key) + "]"


def _cell_by_vertices(D: QuotientComplex, verts: tuple):
    lookup = D.__dict__.get("_by_vertices")
    if lookup is None:
        lookup = D.__dict__["_by_vertices"] = {c.vertices: c for c in D.complex.cells}
    return lookup.get(verts)


def _canonizer(G: OrthotopicGroup):
    cache: dict = {}

    def canon(x):
        x = tuple(x)
        if x not in cache:
            cache[x] = canonicalize_point(G, x)
        return cache[x]
    return canon


def degree_count(record: LattesMapRecord) -> dict:
    """Top D1 classes mapping onto each top D0 class."""
    out = {k: 0 for k in record.D0.top_keys()}
    for key in record.D1.top_keys():
        out[record.table[key].target] = out.get(record.table[key].target, 0) + 1
    return out


def subdivision_matrix(record: LattesMapRecord) -> tuple[list, list[list[int]]]:
    """M[c][c'] = top D1 classes lying in D0 class c and mapping onto c'."""
    keys = record.D0.top_keys()
    pos = {k: i for i, k in enumerate(keys)}
    M = [[0] * len(keys) for _ in keys]
    tops0 = record.D0.complex.of_dim(record.D0.dim)
    for key in record.D1.top_keys():
        sigma = record.table[key].sigma
        home = next(t for t in tops0 if t.contains(sigma))
        M[pos[record.D0.class_of[home]]][pos[record.table[key].target]] += 1
    return keys, M


def evaluate(record: LattesMapRecord, x: Sequence) -> tuple:
    """f at a point, via the lowest-dimensional D1 cell holding its representative."""
    G = record.group
    y = canonicalize_point(G, as_point(x))
    cells = [c for c in record.D1.complex.cells if c.contains_point(y)]
    c = min(cells, key=lambda c: (c.dim, c.sort_key()))
    g = record.D1.to_rep[c]
    e = record.table[record.D1.class_of[c]]
    return canonicalize_point(G, e.witness(g(y)))


def euler_characteristic(D: QuotientComplex) -> int:
    return D.euler_characteristic()


__all__ = [
    "WitnessNotFound", "verify_conjugation", "QuotientCell", "QuotientComplex", "quotient_complex",
    "verify_quotient_decomposition", "build_quotient_complexes", "MapEntry", "LattesMapRecord",
    "build_lattes_cell_map", "verify_markov", "degree_count", "subdivision_matrix", "evaluate",
    "euler_characteristic", "format_key",
]
