"""Exact rational linear algebra.

Row reduction, quotient spaces and images over the rationals.  Scalars
are :class:`fractions.Fraction`; internally the echelon form is kept as
primitive integer rows (fraction-free) and only converted to fractions
when a reduced row echelon form is handed out.  Nothing here touches
floating point.

Matrices are small (a few hundred columns at most) but relation systems
can have thousands of redundant rows, e.g. the lantern relations on an
eight-holed sphere.  The incremental :class:`Echelon` accumulator is
built for that case: each new row is reduced against a fully reduced
basis, so redundant rows cost a handful of sparse updates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "Echelon",
    "QuotientSpace",
    "rref",
    "rank",
    "quotient",
    "image_span",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class RatMatrix:
    """Dense immutable matrix of rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return self.rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = list(zip(*other._data)) if other.rows else [() for _ in range(other.cols)]
        out = [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ot] for r in self._data]
        return RatMatrix(out, other.cols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [_as_fraction(x) for x in v]
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._data)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self._data), self.rows) if self.rows else RatMatrix.zeros(self.cols, 0)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return RatMatrix(self._data + other._data, self.cols)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    """Divide an integer sparse row by its content; make the leading entry positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _integer_row(values) -> dict[int, int]:
    """Clear denominators of a dense or sparse rational row; returns sparse ints."""
    items = values.items() if isinstance(values, dict) else enumerate(values)
    row = {j: x for j, x in items if x != 0}
    if all(type(x) is int for x in row.values()):
        return row
    fr = {j: _as_fraction(x) for j, x in row.items()}
    if not fr:
        return {}
    den = 1
    for x in fr.values():
        den = lcm(den, x.denominator)
    return {j: int(x * den) for j, x in fr.items()}


class Echelon:
    """Incrementally maintained reduced row echelon basis of a row space.

    Rows are stored as primitive integer vectors whose pivot entry is
    positive; every pivot column is zero in all other stored rows.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = dict(row)
        for c in [c for c in row if c in self._rows]:
            a = row.get(c)
            if not a:
                continue
            p = self._rows[c]
            d = p[c]
            # row <- d*row - a*p kills column c; p has no other pivot columns
            if d != 1:
                for k in row:
                    row[k] *= d
            for k, v in p.items():
                nv = row.get(k, 0) - a * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, values) -> bool:
        """Insert a row (dense sequence or sparse dict); return True if rank grew."""
        row = _integer_row(values)
        if any(j < 0 or j >= self.ncols for j in row):
            raise IndexError("row has entries outside the column range")
        row = self._reduce(row)
        if not row:
            return False
        row = _primitive(row)
        c = min(row)
        d = row[c]
        for pc, q in list(self._rows.items()):
            a = q.get(c)
            if not a:
                continue
            new = {k: v * d for k, v in q.items()}
            for k, v in row.items():
                nv = new.get(k, 0) - a * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            self._rows[pc] = _primitive(new)
        self._rows[c] = row
        return True

    def extend(self, rows) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    def copy(self) -> "Echelon":
        e = Echelon(self.ncols)
        e._rows = {c: dict(r) for c, r in self._rows.items()}
        return e

    def contains(self, values) -> bool:
        """True if the row lies in the current row space."""
        return not self._reduce(_integer_row(values))

    def rref_rows(self) -> list[tuple[Fraction, ...]]:
        out = []
        for c in sorted(self._rows):
            r = self._rows[c]
            d = r[c]
            dense = [Fraction(0)] * self.ncols
            for k, v in r.items():
                dense[k] = Fraction(v, d)
            out.append(tuple(dense))
        return out


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    The returned matrix has the same shape as ``m``; zero rows go last.
    ``len(pivots)`` is the rank.
    """
    e = Echelon(m.cols).extend(m)
    rows = e.rref_rows()
    rows += [tuple([Fraction(0)] * m.cols)] * (m.rows - len(rows))
    return RatMatrix(rows, m.cols), e.pivots


def rank(m: RatMatrix) -> int:
    return Echelon(m.cols).extend(m).rank


@dataclass(frozen=True)
class QuotientSpace:
    """``Q^ambient_dim`` modulo the row span of ``relation_rows``.

    ``basis_columns`` are the non-pivot columns of the relations' RREF, in
    increasing order; their images form the quotient basis.  ``projection``
    maps ambient coordinates to coordinates in that basis.
    """

    ambient_dim: int
    relation_rows: RatMatrix
    basis_columns: tuple[int, ...]
    projection: RatMatrix
    _echelon: Echelon = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis_columns)

    @property
    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(self._echelon.pivots)

    def project(self, v: Sequence) -> tuple[Fraction, ...]:
        return self.projection.apply(v)

    def inclusion(self) -> RatMatrix:
        """Ambient coordinates of the chosen basis, one column per basis vector."""
        cols = self.basis_columns
        return RatMatrix(
            [[int(i == c) for c in cols] for i in range(self.ambient_dim)], len(cols)
        )

    def is_zero(self, v: Sequence) -> bool:
        return self._echelon.contains(v)

    def unit(self, j: int) -> tuple[Fraction, ...]:
        """Quotient coordinates of the ambient basis vector ``e_j``."""
        return tuple(self.projection[i, j] for i in range(self.dim))


def _build_quotient(ambient_dim: int, relations: RatMatrix, e: Echelon) -> QuotientSpace:
    pivot_rows = {c: r for c, r in zip(e.pivots, e.rref_rows())}
    free = tuple(j for j in range(ambient_dim) if j not in pivot_rows)
    proj = []
    for c in free:
        row = [Fraction(0)] * ambient_dim
        row[c] = Fraction(1)
        # e_p = -sum_c rref[p][c] e_c in the quotient
        for p, prow in pivot_rows.items():
            row[p] = -prow[c]
        proj.append(row)
    return QuotientSpace(
        ambient_dim=ambient_dim,
        relation_rows=relations,
        basis_columns=free,
        projection=RatMatrix(proj, ambient_dim),
        _echelon=e,
    )


def quotient(ambient_dim: int, relations: RatMatrix | Sequence[Sequence] | None = None) -> QuotientSpace:
    """Quotient of ``Q^ambient_dim`` by the span of the relation rows."""
    if relations is None:
        relations = RatMatrix.zeros(0, ambient_dim)
    elif not isinstance(relations, RatMatrix):
        relations = RatMatrix(relations, ambient_dim)
    if relations.cols != ambient_dim:
        raise ValueError(
            f"relations have {relations.cols} columns, expected {ambient_dim}"
        )
    e = Echelon(ambient_dim).extend(relations)
    return _build_quotient(ambient_dim, relations, e)


def image_span(vectors: Sequence[Sequence], space: QuotientSpace) -> QuotientSpace:
    """Quotient ``space`` further by the span of ``vectors`` (ambient coordinates)."""
    vecs = [tuple(_as_fraction(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != space.ambient_dim:
            raise ValueError("vector length differs from the ambient dimension")
    rel = space.relation_rows.vstack(RatMatrix(vecs, space.ambient_dim)) if vecs else space.relation_rows
    e = space._echelon.copy().extend(vecs)
    return _build_quotient(space.ambient_dim, rel, e)
