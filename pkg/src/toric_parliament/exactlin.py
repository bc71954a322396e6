"""Exact linear algebra over the rationals.

Every subspace of ``Q^r`` is stored by the reduced row echelon form of a
spanning set, so two :class:`Subspace` objects are equal as sets exactly when
their stored matrices are identical.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class DimensionMismatch(ValueError):
    pass


def parse_rational(value) -> Fraction:
    """Read an ``int`` or a ``"p/q"`` string (``q > 0``) as a Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.replace("−", "-")
        match = _RATIONAL_RE.match(text)
        if match:
            num = int(match.group(1))
            den = int(match.group(2)) if match.group(2) is not None else 1
            if den == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(num, den)
    raise ValueError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> int | str:
    """JSON-friendly form: ints stay ints, everything else is ``"p/q"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    mat = [list(map(Fraction, row)) for row in rows]
    for row in mat:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in ambient dimension {ncols}")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        if inv != 1:
            mat[r] = [x * inv for x in mat[r]]
        prow = mat[r]
        for i in range(len(mat)):
            if i != r:
                f = mat[i][c]
                if f != 0:
                    row = mat[i]
                    mat[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def _integer_row(row: Sequence) -> list[int]:
    if all(type(x) is int for x in row):
        return list(row)
    fracs = [Fraction(x) for x in row]
    lcm = 1
    for x in fracs:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in fracs]


def rank(vectors: Iterable[Sequence], ncols: int | None = None) -> int:
    """Exact rank by fraction-free forward elimination over the integers."""
    rows = [_integer_row(v) for v in vectors]
    if not rows:
        return 0
    ncols = ncols if ncols is not None else len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in ambient dimension {ncols}")
    rows = [row for row in rows if any(row)]
    found = 0
    for c in range(ncols):
        pivot = next((i for i in range(found, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[found], rows[pivot] = rows[pivot], rows[found]
        prow = rows[found]
        p = prow[c]
        for i in range(found + 1, len(rows)):
            f = rows[i][c]
            if f:
                new = [p * x - f * y for x, y in zip(rows[i], prow)]
                g = 0
                for x in new:
                    g = math.gcd(g, x)
                rows[i] = [x // g for x in new] if g > 1 else new
        found += 1
        if found == len(rows):
            break
    return found


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def primitive(vector: Sequence) -> tuple[int, ...]:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    vec = [Fraction(x) for x in vector]
    if all(x == 0 for x in vec):
        raise ValueError("cannot normalize the zero vector")
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    mat = [list(map(Fraction, row)) for row in matrix]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        for i in range(c + 1, n):
            f = mat[i][c] / mat[c][c]
            if f:
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return det


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    reduced, pivots = rref(aug, 2 * n)
    if len(reduced) < n or pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [list(row[n:]) for row in reduced]


def solve_coordinates(basis: Sequence[Sequence], vector: Sequence) -> Vector:
    """Coordinates of ``vector`` in a basis of the ambient space (rows)."""
    n = len(basis)
    cols = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(vector[i])]
            for i in range(len(vector))]
    reduced, pivots = rref(cols, n + 1)
    if n in pivots or len(pivots) != n:
        raise ValueError("vector is not in the span of an independent basis")
    return tuple(row[n] for row in reduced)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``Q^ambient_dim`` in canonical (RREF) form."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @cached_property
    def integer_basis(self) -> tuple[tuple[int, ...], ...]:
        """The basis rows scaled to primitive integer vectors."""
        return tuple(primitive(row) for row in self.basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        reduced, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, reduced)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(
            [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)],
            ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")

    def contains(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        return rank(list(self.basis) + [vector], self.ambient_dim) == self.dim

    def __contains__(self, vector) -> bool:
        return self.contains(vector)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def perp(self) -> "Subspace":
        """Annihilator under the standard pairing."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return Subspace.span(nullspace(self.basis, self.ambient_dim), self.ambient_dim)

    def sort_key(self) -> tuple:
        return (self.dim, self.basis)

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(x) for x in row) + ")" for row in self.basis)
        return f"Subspace<{self.ambient_dim}>[{rows}]"


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    if a == b:
        return a
    # A ∩ B = (A^⊥ + B^⊥)^⊥
    return (a.perp() + b.perp()).perp()


def intersect_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    result = Subspace.full(ambient_dim)
    for s in spaces:
        result = intersect(result, s)
        if result.dim == 0:
            break
    return result


def sum_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    vectors: list[Vector] = []
    for s in spaces:
        vectors.extend(s.basis)
    return Subspace.span(vectors, ambient_dim)


def complement_in(v: Subspace, w: Subspace) -> list[tuple[int, ...]]:
    """Vectors of ``V`` completing a basis of ``V ∩ W`` to a basis of ``V``.

    The rows of V's echelon form are tried left to right, so vectors with the
    leftmost pivots win; outputs are primitive integer vectors.
    """
    v._check(w)
    base = list(intersect(v, w).basis)
    current = len(base)
    chosen = []
    for row in v.basis:
        if current == v.dim:
            break
        if rank(base + [row], v.ambient_dim) > current:
            base.append(row)
            current += 1
            chosen.append(primitive(row))
    return chosen


def quotient_rank_of_images(vectors: Sequence[Sequence], u: Subspace, w: Subspace) -> int:
    """Dimension of the span of the images of ``vectors`` in ``U / W``."""
    u._check(w)
    if not w <= u:
        raise ValueError("W is not contained in U")
    for vec in vectors:
        if not u.contains(vec):
            raise ValueError(f"vector {tuple(vec)} is not in U")
    if not vectors:
        return 0
    return rank(list(w.basis) + [tuple(v) for v in vectors], u.ambient_dim) - w.dim
