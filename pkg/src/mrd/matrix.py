"""Dense exact-rational matrices: the substrate for arrays, production and transit matrices."""
from __future__ import annotations

import csv
import io
from fractions import Fraction

from .errors import NotTriangularInvertible
from .series import format_rational, to_rational


def det(rows) -> Fraction | int:
    """Exact determinant of a square list-of-lists.

    Integer input takes the fraction-free Bareiss route and returns an int.
    """
    n = len(rows)
    if n == 0:
        return 1
    if all(type(x) is int for r in rows for x in r):
        return _bareiss([list(r) for r in rows])
    m = [[to_rational(x) for x in r] for r in rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            if m[r][c]:
                factor = m[r][c] / p
                row_r, row_c = m[r], m[c]
                for k in range(c + 1, n):
                    row_r[k] -= factor * row_c[k]
    return sign * result


def _bareiss(m):
    n = len(m)
    sign, prev = 1, 1
    for c in range(n - 1):
        if m[c][c] == 0:
            piv = next((r for r in range(c + 1, n) if m[r][c]), None)
            if piv is None:
                return 0
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        for r in range(c + 1, n):
            row_r, row_c = m[r], m[c]
            a = row_r[c]
            for k in range(c + 1, n):
                row_r[k] = (row_r[k] * p - a * row_c[k]) // prev
        prev = p
    return sign * m[n - 1][n - 1]


class RationalMatrix:
    """Immutable R x C matrix of Fractions."""

    __slots__ = ("_e", "rows", "cols")

    def __init__(self, entries, cols: int | None = None):
        e = tuple(tuple(to_rational(x) for x in row) for row in entries)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(r) != cols for r in e):
            raise ValueError("ragged matrix rows")
        self._e = e
        self.rows = len(e)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @property
    def entries(self):
        return self._e

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def column(self, j):
        return tuple(r[j] for r in self._e)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    __hash__ = None

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})\n{self.to_text()}"

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_b = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self._e:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([sum((x * cb[k] for k, x in nz), Fraction(0)) for cb in cols_b])
        return RationalMatrix(out, other.cols)

    def __sub__(self, other):
        return RationalMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)], self.cols
        )

    def matvec(self, vec):
        return [sum((x * v for x, v in zip(r, vec) if x), Fraction(0)) for r in self._e]

    def block(self, rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix([r[:cols] for r in self._e[:rows]], cols)

    def submatrix(self, row_idx, col_idx) -> "RationalMatrix":
        return RationalMatrix([[self._e[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    def drop_rows(self, k: int) -> "RationalMatrix":
        """The matrix with its first ``k`` rows removed."""
        return RationalMatrix(self._e[k:], self.cols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([self.column(j) for j in range(self.cols)], self.rows)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return Fraction(det(self.as_lists()))

    def as_lists(self, integral_as_int: bool = True):
        """Plain nested lists; integral matrices come back as ints (fast minors)."""
        if integral_as_int and self.is_integral():
            return [[int(x) for x in r] for r in self._e]
        return [list(r) for r in self._e]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._e for x in r)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self._e for x in r)

    def is_lower_triangular(self) -> bool:
        return all(self._e[i][j] == 0 for i in range(self.rows) for j in range(i + 1, self.cols))

    def solve_lower(self, rhs: "RationalMatrix") -> "RationalMatrix":
        """Solve ``self @ X = rhs`` for square lower-triangular ``self``."""
        n = self.rows
        if self.cols != n or rhs.rows != n:
            raise ValueError("solve_lower needs a square system")
        if not self.is_lower_triangular():
            raise NotTriangularInvertible("matrix is not lower triangular")
        for i in range(n):
            if self._e[i][i] == 0:
                raise NotTriangularInvertible(f"zero diagonal entry at ({i}, {i})")
        x = [[Fraction(0)] * rhs.cols for _ in range(n)]
        for j in range(rhs.cols):
            for i in range(n):
                acc = rhs[i, j]
                row = self._e[i]
                for k in range(i):
                    if row[k]:
                        acc -= row[k] * x[k][j]
                x[i][j] = acc / row[i]
        return RationalMatrix(x, rhs.cols)

    def inverse_lower(self) -> "RationalMatrix":
        return self.solve_lower(RationalMatrix.identity(self.rows))

    # -- serialization --------------------------------------------------------
    def to_text(self) -> str:
        cells = [[format_rational(x) for x in r] for r in self._e]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for r in self._e:
            writer.writerow([format_rational(x) for x in r])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(x) for x in r] for r in self._e],
        }

    @classmethod
    def from_json(cls, obj) -> "RationalMatrix":
        m = cls(obj["entries"], obj["cols"])
        if m.rows != obj["rows"]:
            raise ValueError("row count does not match entries")
        return m
