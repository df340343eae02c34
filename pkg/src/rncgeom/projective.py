"""Projective points, hyperplanes, configurations and exact linear algebra.

Homogeneous coordinates are stored canonically: scaled so the first nonzero
coordinate is 1.  Equality and hashing act on canonical tuples, so two points
given by proportional coordinate vectors compare equal.

Determinants are exact.  Over the rationals each point caches a primitive
integer representative, so a bracket is an integer determinant (Bareiss,
fraction free) times a known rational scale; over a prime field elimination
divides in the field directly.  Sizes up to 4 use unrolled cofactor forms,
which dominate the small-degree workloads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .errors import DegenerateInputError, MismatchError
from .fields import Field, PrimeField, Scalar, field_from_json, field_to_json


def canonical_coords(coords: Sequence[Scalar], field: Field) -> tuple:
    """Scale so the first nonzero coordinate is 1; reject the zero vector."""
    vals = tuple(field.scalar(c) for c in coords)
    for v in vals:
        if v:
            return tuple(x / v for x in vals)
    raise ValueError("zero vector has no projective class")


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of projective d-space, canonical homogeneous coordinates."""

    coords: tuple
    field: Field

    def __post_init__(self):
        object.__setattr__(
            self, "coords", canonical_coords(self.coords, self.field))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @cached_property
    def primitive(self) -> tuple[tuple[int, ...], Fraction]:
        """Integer representative and its scale, ints[i] == coords[i]*scale.

        Rationals only.  The integer vector has content 1 and positive first
        nonzero entry; brackets divide out the scales afterwards.
        """
        dens = lcm(*(c.denominator for c in self.coords))
        ints = [int(c * dens) for c in self.coords]
        g = gcd(*ints)
        ints = [v // g for v in ints]
        return tuple(ints), Fraction(dens, g)

    def __repr__(self) -> str:
        inner = ":".join(str(c) for c in self.coords)
        return f"[{inner}]"


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane of projective d-space, canonical coefficient vector."""

    coeffs: tuple
    field: Field

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", canonical_coords(self.coeffs, self.field))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def pairing(self, point: ProjectivePoint) -> Scalar:
        """The value of this hyperplane's form on the point, zero iff incident."""
        if point.field != self.field or point.dim != self.dim:
            raise MismatchError("hyperplane and point do not match")
        total = self.field.zero
        for c, x in zip(self.coeffs, point.coords):
            total = total + c * x
        return total

    def contains(self, point: ProjectivePoint) -> bool:
        return not self.pairing(point)

    def __repr__(self) -> str:
        inner = ":".join(str(c) for c in self.coeffs)
        return f"Hyperplane[{inner}]"


@dataclass(frozen=True)
class Configuration:
    """An ordered tuple of points sharing one field and ambient dimension."""

    field: Field
    dim: int
    points: tuple[ProjectivePoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        for p in self.points:
            if p.field != self.field:
                raise MismatchError("configuration mixes fields")
            if p.dim != self.dim:
                raise MismatchError(
                    f"point in P^{p.dim} inside a P^{self.dim} configuration")

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> ProjectivePoint:
        return self.points[i]


# ---------------------------------------------------------------------------
# determinants


def _det_small(m: list, zero) -> Scalar:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    # n == 4, cofactors along the first row
    total = zero
    sign = 1
    for j in range(4):
        if m[0][j]:
            minor = [[m[i][k] for k in range(4) if k != j] for i in (1, 2, 3)]
            term = m[0][j] * _det_small(minor, zero)
            total = total + term if sign > 0 else total - term
        sign = -sign
    return total


def _det_bareiss_int(m: list[list[int]]) -> int:
    """Fraction-free elimination; exact for integer matrices of any size."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            head = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_gauss_field(m: list, field: Field) -> Scalar:
    n = len(m)
    m = [row[:] for row in m]
    det = field.one
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k]:
                pivot_row = i
                break
        if pivot_row is None:
            return field.zero
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        pivot = m[k][k]
        det = det * pivot
        for i in range(k + 1, n):
            if m[i][k]:
                factor = m[i][k] / pivot
                m[i] = [a - factor * b for a, b in zip(m[i], m[k])]
    return det


def det(m: Sequence[Sequence[Scalar]], field: Field) -> Scalar:
    """Exact determinant of a square matrix of field scalars."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return field.one
    if n <= 4:
        return _det_small([list(row) for row in m], field.zero)
    if isinstance(field, PrimeField):
        return _det_gauss_field([list(row) for row in m], field)
    scale = Fraction(1)
    rows = []
    for row in m:
        dens = lcm(*(c.denominator for c in row))
        scale *= dens
        rows.append([int(c * dens) for c in row])
    return Fraction(_det_bareiss_int(rows)) / scale


def bracket_vectors(field: Field, vectors: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant of the matrix whose columns are the given coordinate
    vectors, in the order written.

    This is the raw multilinear bracket; it sees the actual vectors, not
    projective classes, so rescaling one vector rescales the value.
    """
    k = len(vectors)
    if any(len(v) != k for v in vectors):
        raise MismatchError(
            f"need {k} vectors of length {k} for a full bracket")
    m = [[field.scalar(vectors[j][i]) for j in range(k)] for i in range(k)]
    return det(m, field)


def bracket(points: Sequence[ProjectivePoint]) -> Scalar:
    """Bracket of d+1 points of P^d: the determinant of their canonical
    coordinates as columns.  Zero iff the points fail to span.
    """
    if not points:
        raise ValueError("bracket of no points")
    field = points[0].field
    d = points[0].dim
    for p in points:
        if p.field != field or p.dim != d:
            raise MismatchError("bracket mixes fields or dimensions")
    if len(points) != d + 1:
        raise MismatchError(
            f"bracket in P^{d} needs {d + 1} points, got {len(points)}")
    if isinstance(field, PrimeField):
        m = [[p.coords[i] for p in points] for i in range(d + 1)]
        return det(m, field)
    ints = []
    scale = Fraction(1)
    for p in points:
        vec, s = p.primitive
        ints.append(vec)
        scale *= s
    m = [[ints[j][i] for j in range(d + 1)] for i in range(d + 1)]
    if d + 1 <= 4:
        value = _det_small(m, 0)
    else:
        value = _det_bareiss_int(m)
    return Fraction(value) / scale


# ---------------------------------------------------------------------------
# elimination


def rref(m: Sequence[Sequence[Scalar]], field: Field):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in m]
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        rows[r] = [a / pivot for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(config: Configuration) -> int:
    """Rank of the (d+1) x n matrix of coordinate columns."""
    if len(config) == 0:
        return 0
    m = [[p.coords[i] for p in config.points] for i in range(config.dim + 1)]
    _, pivots = rref(m, config.field)
    return len(pivots)


def mat_vec(m: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list:
    out = []
    for row in m:
        acc = row[0] * v[0]
        for a, x in zip(row[1:], v[1:]):
            acc = acc + a * x
        out.append(acc)
    return out


def mat_inverse(m: Sequence[Sequence[Scalar]], field: Field) -> list:
    """Exact inverse of a square matrix; raises on singular input."""
    n = len(m)
    aug = [list(row) + [field.one if i == j else field.zero
                        for j in range(n)] for i, row in enumerate(m)]
    rows, pivots = rref(aug, field)
    if pivots != list(range(n)):
        raise DegenerateInputError("matrix is singular")
    return [row[n:] for row in rows]


def solve_linear(m: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar],
                 field: Field) -> list:
    """Solve a square nonsingular system exactly."""
    n = len(m)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    rows, pivots = rref(aug, field)
    if pivots != list(range(n)):
        raise DegenerateInputError("system is singular")
    return [row[n] for row in rows]


def hyperplane_intersection(planes: Sequence[Hyperplane]) -> ProjectivePoint:
    """The common point of d hyperplanes of P^d, when it is unique."""
    if not planes:
        raise ValueError("no hyperplanes")
    field = planes[0].field
    d = planes[0].dim
    for h in planes:
        if h.field != field or h.dim != d:
            raise MismatchError("hyperplanes mix fields or dimensions")
    m = [list(h.coeffs) for h in planes]
    rows, pivots = rref(m, field)
    free = [c for c in range(d + 1) if c not in pivots]
    if len(free) != 1:
        raise DegenerateInputError(
            f"intersection has dimension {d - len(pivots)}, not a point")
    f = free[0]
    coords = [field.zero] * (d + 1)
    coords[f] = field.one
    for r, c in enumerate(pivots):
        coords[c] = -rows[r][f]
    return ProjectivePoint(tuple(coords), field)


# ---------------------------------------------------------------------------
# position predicates


def is_general_linear_position(config: Configuration) -> bool:
    """Whether every subset of at most d+1 points spans projectively.

    For n <= d+1 this is full rank; for larger n it is equivalent to every
    (d+1)-subset having nonzero bracket, since any dependent subset extends
    to a dependent one of size d+1.
    """
    n = len(config)
    d = config.dim
    if n <= d + 1:
        return rank(config) == n
    for subset in combinations(config.points, d + 1):
        if not bracket(subset):
            return False
    return True


def is_degenerate(config: Configuration) -> bool:
    """Whether the configuration lies in a hyperplane.

    Only meaningful once there are enough points to span, so n >= d+1 is
    required.
    """
    if len(config) < config.dim + 1:
        raise MismatchError(
            f"need at least {config.dim + 1} points to test degeneracy")
    return rank(config) <= config.dim


# ---------------------------------------------------------------------------
# serialization


def config_to_json(config: Configuration) -> dict:
    fmt = config.field.format
    return {
        "field": field_to_json(config.field),
        "dim": config.dim,
        "points": [[fmt(c) for c in p.coords] for p in config.points],
    }


def config_from_json(obj: dict) -> Configuration:
    field = field_from_json(obj["field"])
    dim = int(obj["dim"])
    points = tuple(
        ProjectivePoint(tuple(field.parse(c) for c in row), field)
        for row in obj["points"])
    return Configuration(field=field, dim=dim, points=points)
