"""Exact rational linear algebra and affine maps.

Points are plain tuples of :class:`fractions.Fraction`.  Every routine here is a
pure function over immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd
from typing import Iterable, Sequence

Point = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or 'p/q'")
    return Fraction(x)


def as_point(coords: Iterable) -> Point:
    return tuple(Q(c) for c in coords)


def pad(p: Sequence, n: int) -> Point:
    """Embed a point of R^d into R^n by zero padding (d <= n)."""
    if len(p) > n:
        raise ValueError(f"cannot embed a {len(p)}-dim point into R^{n}")
    return as_point(p) + (Fraction(0),) * (n - len(p))


def origin(n: int) -> Point:
    return (Fraction(0),) * n


def sub(p: Sequence, q: Sequence) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def add(p: Sequence, q: Sequence) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def scale(s, p: Sequence) -> Point:
    return tuple(s * a for a in p)


def dot(p: Sequence, q: Sequence):
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def barycenter(points: Sequence[Sequence]) -> Point:
    m = len(points)
    return tuple(sum(col, Fraction(0)) / m for col in zip(*points))


def primitive(coeffs: Sequence, const=0) -> tuple[tuple[int, ...], int]:
    """Scale ``coeffs . x + const`` to coprime integers, keeping the sign."""
    vals = [Q(c) for c in coeffs] + [Q(const)]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints[:-1]), ints[-1]
    ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Q(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Point]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Point | None:
    """Unique solution of a square system, or None when singular."""
    n = len(a)
    m = [[Q(x) for x in row] + [Q(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = m[i][n] - sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / m[i][i]
    return tuple(x)


def det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[Q(x) for x in row] for row in a]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pv = m[c][c]
        d *= pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * d


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix . x + offset, mapping R^k to R^m (matrix is m x k)."""

    matrix: tuple
    offset: tuple

    @classmethod
    def from_rows(cls, matrix: Iterable[Iterable], offset: Iterable) -> "AffineMap":
        return cls(tuple(as_point(r) for r in matrix), as_point(offset))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls.scaling([1] * n)

    @classmethod
    def scaling(cls, factors: Sequence, offset: Sequence | None = None) -> "AffineMap":
        n = len(factors)
        rows = [[factors[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, offset if offset is not None else [0] * n)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.offset)

    def __call__(self, p: Sequence) -> Point:
        return tuple(dot(row, p) + o for row, o in zip(self.matrix, self.offset))

    def linear(self, v: Sequence) -> Point:
        return tuple(dot(row, v) for row in self.matrix)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self o other."""
        other = as_affine(other)
        cols = list(zip(*other.matrix))
        mat = tuple(tuple(dot(row, col) for col in cols) for row in self.matrix)
        return AffineMap(mat, self(other.offset))

    def inverse(self) -> "AffineMap":
        n = self.target_dim
        if self.source_dim != n:
            raise NonInvertible("affine map between spaces of different dimension")
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.matrix)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise NonInvertible("singular linear part")
        inv = tuple(tuple(row[n:]) for row in red)
        off = tuple(-dot(row, self.offset) for row in inv)
        return AffineMap(inv, off)

    def is_injective_on(self, directions: Sequence[Sequence]) -> bool:
        """True when the linear part is injective on span(directions)."""
        if not directions:
            return True
        return rank([self.linear(d) for d in directions]) == rank(directions)


class NonInvertible(ValueError):
    pass


@dataclass(frozen=True)
class AffineSignedIsometry:
    """x -> D E x + t with D diagonal +-1 and E a coordinate permutation.

    ``perm[i]`` is the image axis of axis i, ``signs[i]`` the sign applied to it,
    so the image of e_i is signs[i] * e_{perm[i]}.
    """

    perm: tuple
    signs: tuple
    translation: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n or len(self.translation) != n:
            raise ValueError("malformed signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def make(cls, perm: Sequence[int], signs: Sequence[int], translation: Sequence | None = None):
        n = len(perm)
        t = as_point(translation) if translation is not None else origin(n)
        return cls(tuple(perm), tuple(int(s) for s in signs), t)

    @classmethod
    def identity(cls, n: int) -> "AffineSignedIsometry":
        return cls.make(range(n), [1] * n)

    @classmethod
    def translation_by(cls, v: Sequence) -> "AffineSignedIsometry":
        n = len(v)
        return cls.make(range(n), [1] * n, v)

    @property
    def dim(self) -> int:
        return len(self.perm)

    def __call__(self, p: Sequence) -> Point:
        out = list(self.translation)
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = out[j] + s * p[i]
        return tuple(out)

    def linear(self, v: Sequence) -> Point:
        out = [Fraction(0)] * self.dim
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = s * Q(v[i])
        return tuple(out)

    def compose(self, other: "AffineSignedIsometry") -> "AffineSignedIsometry":
        """self o other."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.dim))
        signs = tuple(self.signs[other.perm[i]] * other.signs[i] for i in range(self.dim))
        return AffineSignedIsometry(perm, signs, self(other.translation))

    def inverse(self) -> "AffineSignedIsometry":
        n = self.dim
        perm = [0] * n
        signs = [1] * n
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            perm[j] = i
            signs[j] = s
        lin = AffineSignedIsometry(tuple(perm), tuple(signs), origin(n))
        return AffineSignedIsometry(lin.perm, lin.signs, tuple(-x for x in lin(self.translation)))

    def linear_key(self) -> tuple:
        return self.perm, self.signs

    def is_translation(self) -> bool:
        return self.perm == tuple(range(self.dim)) and all(s == 1 for s in self.signs)

    def as_affine(self) -> AffineMap:
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            rows[j][i] = Fraction(s)
        return AffineMap(tuple(tuple(r) for r in rows), self.translation)

    def __str__(self) -> str:
        names = [f"x{i + 1}" for i in range(self.dim)]
        out = [""] * self.dim
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = ("-" if s < 0 else "") + names[i]
        for j, t in enumerate(self.translation):
            if t:
                out[j] += f"{'+' if t > 0 else '-'}{abs(t)}"
        return "(" + ", ".join(names) + ") -> (" + ", ".join(out) + ")"


def as_affine(m) -> AffineMap:
    if isinstance(m, AffineMap):
        return m
    return m.as_affine()


def signed_permutations(d: int, n: int | None = None):
    """All signed permutations of the first d axes of R^n, identity on the rest."""
    n = d if n is None else n
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            yield AffineSignedIsometry.make(tuple(perm) + tuple(range(d, n)), signs + (1,) * (n - d))
