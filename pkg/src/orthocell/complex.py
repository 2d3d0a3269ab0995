"""Finite complexes of convex cells and their verification.

Failures are reported, never raised: every ``verify_*`` function returns a
:class:`VerificationReport` whose checks carry concrete witnesses.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .polytope import (
    ConvexCell,
    _eval,
    apply_map,
    cell_boundary_facets,
    intersect,
    map_is_injective_on,
    relative_interior_point,
    volume,
)


class NotAUnionOfCells(ValueError):
    pass


class NoContainingCell(ValueError):
    pass


class IncompatibleOnSharedFace(ValueError):
    def __init__(self, sigma: ConvexCell, c: ConvexCell):
        super().__init__(f"refinement of {sigma!r} restricted to {c!r} differs from the refinement of {c!r}")
        self.sigma = sigma
        self.c = c


# -- reports ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "witnesses": [str(w) for w in self.witnesses[:20]],
                "witness_count": len(self.witnesses)}


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, witnesses: list, detail: str = "") -> Check:
        chk = Check(name, not witnesses, list(witnesses), detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witnesses, c.detail))

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"subject": self.subject, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'} {self.subject}"]
        for c in self.checks:
            extra = f" ({len(c.witnesses)} witnesses, first: {c.witnesses[0]})" if c.witnesses else ""
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}{extra}")
        return "\n".join(lines)


# -- complexes -------------------------------------------------------------------------

class _Index:
    """Cells sorted by their lowest first coordinate, for containment queries."""

    def __init__(self, cells: Sequence[ConvexCell]):
        self.cells = sorted(cells, key=lambda c: (c.lo[0] if c.ambient_dim else 0, c.sort_key()))
        self.keys = [c.lo[0] if c.ambient_dim else 0 for c in self.cells]

    def within(self, region: ConvexCell) -> list[ConvexCell]:
        if not region.ambient_dim:
            return [c for c in self.cells if region.contains(c)]
        i = bisect_left(self.keys, region.lo[0])
        j = bisect_right(self.keys, region.hi[0])
        lo, hi = region.lo, region.hi
        return [c for c in self.cells[i:j]
                if all(a <= x for a, x in zip(lo, c.lo)) and all(y <= b for b, y in zip(hi, c.hi))
                and region.contains(c)]

    def containing(self, cell: ConvexCell) -> list[ConvexCell]:
        if not cell.ambient_dim:
            return [c for c in self.cells if c.contains(cell)]
        j = bisect_right(self.keys, cell.lo[0])
        lo, hi = cell.lo, cell.hi
        return [c for c in self.cells[:j]
                if all(a <= x for a, x in zip(c.lo, lo)) and all(y <= b for b, y in zip(c.hi, hi))
                and c.contains(cell)]


@dataclass(frozen=True)
class CellComplex:
    """A finite set of cells plus the space they are meant to decompose.

    ``space`` is a single cell or a tuple of cells whose union is the space.
    """

    ambient_dim: int
    cells: tuple
    space: object = None

    @classmethod
    def of(cls, n: int, cells: Iterable[ConvexCell], space=None) -> "CellComplex":
        cells = tuple(sorted(set(cells)))
        if any(c.ambient_dim != n for c in cells):
            raise ValueError("cells of mixed ambient dimension")
        return cls(n, cells, space)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, c):
        return c in self.cell_set

    @property
    def cell_set(self) -> frozenset:
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.cells)
            object.__setattr__(self, "_set", s)
        return s

    @property
    def index(self) -> _Index:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = _Index(self.cells)
            object.__setattr__(self, "_index", idx)
        return idx

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def space_pieces(self) -> tuple:
        if self.space is None:
            return tuple(c for c in self.cells if not any(o != c and o.contains(c) for o in self.cells))
        if isinstance(self.space, ConvexCell):
            return (self.space,)
        return tuple(self.space)

    def of_dim(self, k: int) -> list[ConvexCell]:
        return [c for c in self.cells if c.dim == k]

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cells:
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * m for k, m in self.counts().items())

    def within(self, region: ConvexCell) -> list[ConvexCell]:
        return self.index.within(region)

    def __eq__(self, other):
        return isinstance(other, CellComplex) and self.cell_set == other.cell_set

    def __hash__(self):
        return hash(self.cell_set)


def _covered(cells: Sequence[ConvexCell], region: ConvexCell) -> bool:
    """Cells of dim(region) inside region fill it up (volume accounting)."""
    k = region.dim
    if k == 0:
        return region in cells
    total = sum(volume(c, k, region.chart) for c in cells if c.dim == k)
    return total == volume(region, k)


def _separated(a: ConvexCell, b: ConvexCell) -> bool:
    """Cheap sufficient test that relint(a) and relint(b) are disjoint."""
    for x, y in ((a, b), (b, a)):
        for f in x.facets:
            if all(_eval(f, v) <= 0 for v in y.vertices):
                return True
        for e in x.equations:
            vals = [_eval(e, v) for v in y.vertices]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                return True
            if all(v <= 0 for v in vals) and any(v < 0 for v in vals):
                return True
    return False


def relints_meet(a: ConvexCell, b: ConvexCell) -> bool:
    """Exact test for relint(a) & relint(b) != {}.

    When the relative interiors meet, relint(a & b) = relint(a) & relint(b), so the
    vertex barycenter of the intersection decides it.
    """
    if a == b:
        return True
    if _separated(a, b):
        return False
    p = intersect(a, b)
    if p is None:
        return False
    x = relative_interior_point(p)
    return a.relint_contains(x) and b.relint_contains(x)


def _open_overlap(a: ConvexCell, b: ConvexCell, axis: int) -> bool:
    lo1, hi1, lo2, hi2 = a.lo[axis], a.hi[axis], b.lo[axis], b.hi[axis]
    if lo1 == hi1 and lo2 == hi2:
        return lo1 == lo2
    if lo1 == hi1:
        return lo2 < lo1 < hi2
    if lo2 == hi2:
        return lo1 < lo2 < hi1
    return max(lo1, lo2) < min(hi1, hi2)


def candidate_pairs(cells: Sequence[ConvexCell]):
    """Pairs whose relative interiors could meet, by projection onto each axis."""
    if not cells:
        return
    n = cells[0].ambient_dim
    if n == 0:
        yield from ((a, b) for i, a in enumerate(cells) for b in cells[i + 1:])
        return
    order = sorted(cells, key=lambda c: c.lo[0])
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if b.lo[0] > a.hi[0]:
                break
            if all(_open_overlap(a, b, ax) for ax in range(n)):
                yield a, b


def verify_cell_decomposition(D: CellComplex, subject: str = "cell decomposition") -> VerificationReport:
    rep = VerificationReport(subject)
    cells = list(D.cells)
    pieces = D.space_pieces()

    # (i) union equals the space
    bad = []
    for c in cells:
        if not any(p.contains(c) for p in pieces):
            bad.append(f"cell outside space: {c!r}")
    for p in pieces:
        inside = D.within(p)
        if any(c.dim > p.dim for c in inside) or not _covered(inside, p):
            bad.append(f"space piece not covered: {p!r}")
    rep.add("(i) union equals space", bad)

    # (ii) pairwise disjoint cell-interiors
    bad = [f"{a!r} / {b!r}" for a, b in candidate_pairs(cells) if relints_meet(a, b)]
    rep.add("(ii) disjoint cell-interiors", bad)

    # (iii) every cell-boundary is a union of cells
    bad = []
    for tau in cells:
        if tau.dim == 0:
            continue
        for f in cell_boundary_facets(tau):
            if not _covered(D.within(f), f):
                bad.append(f"facet {f!r} of {tau!r} not a union of cells")
    rep.add("(iii) cell-boundaries are unions of cells", bad)

    rep.add("(iv) local finiteness", [], detail=f"finite complex with {len(cells)} cells")
    return rep


def restrict(D: CellComplex, S) -> CellComplex:
    """D|_S = {c in D : c subset of S}; S a cell or a collection of cells of D."""
    pieces = (S,) if isinstance(S, ConvexCell) else tuple(S)
    cells = set()
    for p in pieces:
        inside = D.within(p)
        if not _covered(inside, p):
            raise NotAUnionOfCells(f"{p!r} is not a union of cells of the complex")
        cells.update(inside)
    return CellComplex.of(D.ambient_dim, cells, space=pieces[0] if len(pieces) == 1 else pieces)


def skeleton(D: CellComplex, k: int) -> list[ConvexCell]:
    if not 0 <= k <= D.ambient_dim:
        raise ValueError(f"k={k} outside 0..{D.ambient_dim}")
    return [c for c in D.cells if c.dim <= k]


def verify_refinement(D1: CellComplex, D0: CellComplex, subject: str = "refinement") -> VerificationReport:
    rep = VerificationReport(subject)
    idx0 = D0.index
    rep.add("(i) every cell lies in a coarse cell",
            [f"{s!r}" for s in D1.cells if not idx0.containing(s)])
    rep.add("(ii) every coarse cell is a union of fine cells",
            [f"{t!r}" for t in D0.cells if not _covered(D1.within(t), t)])
    return rep


def minimal_containing_cell(D0: CellComplex, sigma: ConvexCell) -> ConvexCell:
    p = relative_interior_point(sigma)
    for tau in D0.index.containing(sigma):
        if tau.relint_contains(p):
            return tau
    raise NoContainingCell(f"no cell of the coarse complex contains {sigma!r} in its interior")


def glue_refinements(D: CellComplex, per_cell: Mapping[ConvexCell, CellComplex]) -> CellComplex:
    """Union of per-cell refinements, checking D'(sigma)|_c = D'(c) for c in sigma."""
    missing = [c for c in D.cells if c not in per_cell]
    if missing:
        raise KeyError(f"no refinement given for {missing[0]!r}")
    for sigma in D.cells:
        sub = per_cell[sigma]
        for c in D.within(sigma):
            if c == sigma:
                continue
            if set(sub.within(c)) != set(per_cell[c].cells):
                raise IncompatibleOnSharedFace(sigma, c)
    cells = set()
    for c in D.cells:
        cells.update(per_cell[c].cells)
    return CellComplex.of(D.ambient_dim, cells, space=D.space)


def pullback(phi, D: CellComplex) -> CellComplex:
    """phi^*(D) = {phi^-1(c)}; raises NonInvertible for singular maps."""
    inv = phi.inverse()
    cells = [apply_map(inv, c) for c in D.cells]
    space = D.space
    if isinstance(space, ConvexCell):
        space = apply_map(inv, space)
    elif space is not None:
        space = tuple(apply_map(inv, p) for p in space)
    return CellComplex.of(D.ambient_dim, cells, space=space)


# -- cellular maps ---------------------------------------------------------------------

@dataclass
class CellularMapTable:
    """source cell -> (image cell, affine witness)."""

    source: CellComplex
    target: CellComplex
    assignment: dict


def verify_cellular_map(t: CellularMapTable, subject: str = "cellular map") -> VerificationReport:
    rep = VerificationReport(subject)
    rep.add("every source cell assigned", [f"{c!r}" for c in t.source.cells if c not in t.assignment])

    bad = []
    for c, (img, w) in t.assignment.items():
        if img not in t.target:
            bad.append(f"{c!r} -> {img!r}: image not a target cell")
        elif img.dim != c.dim or not map_is_injective_on(w, c):
            bad.append(f"{c!r} -> {img!r}: not a homeomorphism (dimension collapse)")
        elif apply_map(w, c) != img:
            bad.append(f"{c!r}: witness image {apply_map(w, c)!r} differs from {img!r}")
    rep.add("witness maps each cell onto its image", bad)

    bad = []
    for big, (_, wb) in t.assignment.items():
        for small in t.source.within(big):
            if small == big or small not in t.assignment:
                continue
            ws = t.assignment[small][1]
            if any(wb(v) != ws(v) for v in small.vertices):
                bad.append(f"witnesses of {big!r} and {small!r} disagree")
    rep.add("assignments agree on shared faces", bad)
    return rep


def verify_cellular_markov(t: CellularMapTable, subject: str = "cellular Markov partition") -> VerificationReport:
    rep = VerificationReport(subject)
    same = set(t.source.space_pieces()) == set(t.target.space_pieces())
    rep.add("source and target decompose the same space", [] if same else ["spaces differ"])
    rep.extend(verify_refinement(t.source, t.target), "refinement ")
    rep.extend(verify_cellular_map(t), "cellular ")
    return rep
