"""Sparse multivariate polynomials over the rationals.

The ring is Q[a_1..a_n, b_1..b_n] for a fixed number n of parameter points;
variable v < n is a_{v+1} and variable n+i is b_{i+1}.  A polynomial is a
map from exponent tuples (length 2n) to nonzero Fraction coefficients.
The symbolic identities this package verifies are huge but extremely
sparse in these variables, which is the whole case for this representation.

Printing (and therefore golden-file comparison) uses graded lexicographic
term order: higher total degree first, then lexicographically larger
exponent vector first, e.g. "a1*b2 - a2*b1".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

Exponents = tuple[int, ...]


class MultiPoly:
    """An immutable sparse polynomial; arithmetic never mutates operands."""

    __slots__ = ("n_points", "terms")

    def __init__(self, n_points: int,
                 terms: Mapping[Exponents, Fraction] = ()):
        if n_points < 1:
            raise ValueError("need at least one parameter point")
        width = 2 * n_points
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != width or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = coeff
        object.__setattr__(self, "n_points", n_points)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors

    @classmethod
    def _raw(cls, n_points: int, terms: dict) -> "MultiPoly":
        out = object.__new__(cls)
        object.__setattr__(out, "n_points", n_points)
        object.__setattr__(out, "terms", terms)
        return out

    @classmethod
    def zero(cls, n_points: int) -> "MultiPoly":
        return cls._raw(n_points, {})

    @classmethod
    def constant(cls, n_points: int, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return cls.zero(n_points)
        return cls._raw(n_points, {(0,) * (2 * n_points): c})

    @classmethod
    def one(cls, n_points: int) -> "MultiPoly":
        return cls.constant(n_points, 1)

    @classmethod
    def var_a(cls, n_points: int, i: int) -> "MultiPoly":
        """The variable a_i, 1-based."""
        return cls._var(n_points, i - 1, i)

    @classmethod
    def var_b(cls, n_points: int, i: int) -> "MultiPoly":
        """The variable b_i, 1-based."""
        return cls._var(n_points, n_points + i - 1, i)

    @classmethod
    def _var(cls, n_points: int, slot: int, i: int) -> "MultiPoly":
        if not 1 <= i <= n_points:
            raise ValueError(f"variable index {i} outside 1..{n_points}")
        exps = [0] * (2 * n_points)
        exps[slot] = 1
        return cls._raw(n_points, {tuple(exps): Fraction(1)})

    # -- ring structure

    def _check(self, other: "MultiPoly") -> None:
        if self.n_points != other.n_points:
            raise ValueError("polynomials from different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = out.get(exps, 0) + coeff
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiPoly._raw(self.n_points, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(
            self.n_points, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(exps, 0) + c1 * c2
                if s:
                    out[exps] = s
                else:
                    del out[exps]
        return MultiPoly._raw(self.n_points, out)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.n_points)
        return MultiPoly._raw(
            self.n_points, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.one(self.n_points)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n_points == other.n_points and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n_points, frozenset(self.terms.items())))

    # -- queries

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Largest term degree; the zero polynomial reports 0."""
        return max((sum(e) for e in self.terms), default=0)

    def degree_in_point(self, i: int) -> int:
        """Joint degree in a_i and b_i, 1-based."""
        n = self.n_points
        return max((e[i - 1] + e[n + i - 1] for e in self.terms), default=0)

    def evaluate(self, values: Sequence[tuple[Fraction, Fraction]]) -> Fraction:
        """Substitute a_i = values[i-1][0], b_i = values[i-1][1]."""
        if len(values) != self.n_points:
            raise ValueError(
                f"need {self.n_points} value pairs, got {len(values)}")
        flat = [Fraction(a) for a, _ in values] + \
            [Fraction(b) for _, b in values]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(flat, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    # -- printing

    def _var_name(self, slot: int) -> str:
        n = self.n_points
        return f"a{slot + 1}" if slot < n else f"b{slot - n + 1}"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms,
            key=lambda e: (-sum(e), tuple(-x for x in e)))
        pieces = []
        for exps in ordered:
            coeff = self.terms[exps]
            factors = []
            for slot, e in enumerate(exps):
                if e == 1:
                    factors.append(self._var_name(slot))
                elif e > 1:
                    factors.append(f"{self._var_name(slot)}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(coeff)) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"<MultiPoly {self}>"


def poly_det(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square matrix of polynomials.

    Expands row by row over column subsets (the usual minor dynamic
    program), which beats permutation expansion as soon as minors repeat.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    ring = rows[0][0].n_points
    minors: dict[int, MultiPoly] = {0: MultiPoly.one(ring)}
    for r in range(n):
        nxt: dict[int, MultiPoly] = {}
        for mask, minor in minors.items():
            if minor.is_zero:
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = rows[r][j]
                if entry.is_zero:
                    continue
                term = minor * entry
                if (r + bin(mask & (bit - 1)).count("1")) % 2:
                    term = -term
                new_mask = mask | bit
                acc = nxt.get(new_mask)
                nxt[new_mask] = term if acc is None else acc + term
        minors = nxt
    full = (1 << n) - 1
    return minors.get(full, MultiPoly.zero(ring))
