"""
Compressions of multiple Riordan arrays and total-positivity testing.

The compression of a proper ell-multiple array keeps the entries
``d_(n ell - (ell-1) k, k)``, which squeezes the stride-ell staircase into an
ordinary lower-triangular matrix.  It is itself generated by cycled columns of
``(g^; f^_1, ..., f^_ell)`` where ``g^(t) = g(t^(1/ell))`` and
``f^_i(t) = t (f_i / t)(t^(1/ell))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BudgetExceeded, InsufficientTruncation, InvalidSpec, KindMismatch
from .matrix import RationalMatrix, det
from .multiriordan import MultiRiordanSpec, column_series, mbuild, mseq
from .riordan import RecurrenceReport, matrix_from_columns
from .series import Series, format_rational


def compress(a: MultiRiordanSpec, rows: int, cols: int) -> RationalMatrix:
    """Entries ``d_(n ell - (ell-1) k, k)``, zero where the row index is negative."""
    if a.kind != "proper":
        raise KindMismatch("use compress_type for multiple Riordan type arrays")
    ell = a.ell
    src_rows = (rows - 1) * ell + 1 if rows else 0
    D = mbuild(a, src_rows, cols)
    out = []
    for n in range(rows):
        row = []
        for k in range(cols):
            i = n * ell - (ell - 1) * k
            row.append(D[i, k] if i >= 0 else Fraction(0))
        out.append(row)
    return RationalMatrix(out, cols)


@dataclass(frozen=True, eq=False)
class CompressedSpec:
    """``(g^; f^_1, ..., f^_ell)``; columns cycle through the f^_i like a multiple array,
    but without any grading condition."""

    ell: int
    g: Series
    f: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if len(self.f) != self.ell:
            raise InvalidSpec(f"expected {self.ell} multiplier functions, got {len(self.f)}")

    @property
    def order(self) -> int:
        return min([self.g.order] + [fi.order for fi in self.f])

    def __eq__(self, other):
        if not isinstance(other, CompressedSpec):
            return NotImplemented
        return (
            self.ell == other.ell
            and self.g == other.g
            and all(x == y for x, y in zip(self.f, other.f))
        )

    __hash__ = None

    def to_json(self):
        return {"ell": self.ell, "g": self.g.to_json(), "f": [fi.to_json() for fi in self.f]}


def compress_spec(a: MultiRiordanSpec) -> CompressedSpec:
    if a.kind == "proper":
        fs = tuple(fi.decimate(a.ell, 1).shift(1) for fi in a.f)
    else:
        fs = tuple(fi.decimate(a.ell) for fi in a.f)
    return CompressedSpec(a.ell, a.g.decimate(a.ell), fs)


def expand_spec(c: CompressedSpec, kind: str = "proper") -> MultiRiordanSpec:
    """Inverse of compress_spec."""
    g = c.g.expand(c.ell)
    if kind == "proper":
        fs = tuple(fi.shift(-1).expand(c.ell).shift(1) for fi in c.f)
    else:
        fs = tuple(fi.expand(c.ell) for fi in c.f)
    return MultiRiordanSpec(c.ell, g, fs, kind)


def build_compressed(c: CompressedSpec, rows: int, cols: int) -> RationalMatrix:
    if c.order < rows - 1:
        raise InsufficientTruncation(f"spec known to order {c.order}, {rows} rows requested")
    return matrix_from_columns(column_series(c.g, c.f, cols), rows)


def compress_type(a: MultiRiordanSpec, rows: int, cols: int) -> RationalMatrix:
    """Square array of ``(d(t^(1/ell)); h_1(t^(1/ell)), ...)``; entry ``(n, k)`` is ``d_(n ell, k)``."""
    if a.kind != "type":
        raise KindMismatch("compress_type needs a multiple Riordan type array")
    return build_compressed(compress_spec(a), rows, cols)


# -- sequence characterization of compressions --------------------------------


def compressed_seq_check(a: MultiRiordanSpec, depth: int) -> RecurrenceReport:
    """Verify the A/Z description of the compression of a proper array.

    With ``rho = F^ / t^(ell-1)``, ``F^ = f^_1 ... f^_ell`` and ``A^(u) = sum a_j u^j``
    (the A-sequence read with unit stride)::

        "a-series"      A^(rho) = F^ / t^ell
        "z0-series"     Z^_0(rho) = (1 - g_0 / g^) / t
        "zm-series"     Z^_m(rho) = (1 - g_0 f_11...f_m1 t^m / (g^ f^_1...f^_m)) / t
        "a-compressed"  d^[n,k] = sum_j a_j d^[n - ell + j (ell-1), k + (j-1) ell]    (k >= ell)
        "z-compressed"  d^[n,m] = sum_j z_(m,j) d^[n - 1 + j (ell-1), m + j ell]      (n > m)

    The first three are compared coefficientwise for ``t^0 .. t^(depth-1)``.
    Substituting ``rho`` into a series in ``u`` is the same as substituting
    its ell-th root into the strided series, so no root is taken.
    """
    if a.kind != "proper":
        raise KindMismatch("compressed sequence check needs a proper multiple array")
    ell = a.ell
    report = RecurrenceReport(depth)
    if depth < 1:
        return report
    seq = mseq(a)
    c = compress_spec(a)
    Fh = Series.const(1, c.order)
    for fi in c.f:
        Fh = Fh * fi
    rho = Fh.shift(-(ell - 1))
    g0 = a.g.coeffs[0]

    def compare(name, lhs, rhs):
        top = min(lhs.order, rhs.order, depth - 1)
        if top < depth - 1:
            raise InsufficientTruncation(f"{name}: only {top + 1} coefficients known")
        for n in range(depth):
            report.record(name, n, 0, lhs.coeffs[n], rhs.coeffs[n])

    compare("a-series", seq.A.decimate(ell).compose(rho), Fh.shift(-ell))
    compare("z0-series", seq.Z[0].decimate(ell).compose(rho), (1 - g0 / c.g).shift(-1))
    lead, prod = g0, c.g
    for m in range(1, ell):
        lead *= a.f[m - 1].coeffs[1]
        prod = prod * c.f[m - 1]
        rhs = (1 - lead * Series.monomial(1, m, prod.order) / prod).shift(-1)
        compare("zm-series", seq.Z[m].decimate(ell).compose(rho), rhs)

    # terms vanish once the row index drops below the column index, which
    # bounds j by n - k; every surviving index stays below (depth-1) ell + 1
    A = seq.a()
    Zs = [seq.z(m) for m in range(ell)]
    need_rows = need_cols = (depth - 1) * ell + 1
    if len(A) < depth or any(len(z) < depth for z in Zs):
        raise InsufficientTruncation("sequence characterization too short for the requested depth")
    Dh = build_compressed(c, need_rows, need_cols)

    def d(n, k):
        if n < 0 or n < k:
            return Fraction(0)
        return Dh[n, k]

    for n in range(depth):
        for k in range(ell, depth):
            rhs = sum(
                (A[j] * d(n - ell + j * (ell - 1), k + (j - 1) * ell) for j in range(max(n - k, -1) + 1)),
                Fraction(0),
            )
            report.record("a-compressed", n, k, d(n, k), rhs)
        for m in range(min(ell, n)):
            rhs = sum(
                (Zs[m][j] * d(n - 1 + j * (ell - 1), m + j * ell) for j in range(n - m)),
                Fraction(0),
            )
            report.record("z-compressed", n, m, d(n, m), rhs)
    return report


# -- total positivity ---------------------------------------------------------

DEFAULT_BUDGET = 2_000_000


@dataclass
class TPReport:
    order: int
    block: int
    cols: int
    ok: bool
    witness: dict | None
    minors_checked: int

    def to_json(self):
        return {
            "order": self.order,
            "block": self.block,
            "cols": self.cols,
            "ok": self.ok,
            "minors_checked": self.minors_checked,
            "witness": self.witness,
        }


def count_minors(rows: int, cols: int, max_order: int) -> int:
    return sum(comb(rows, k) * comb(cols, k) for k in range(1, min(max_order, rows, cols) + 1))


def tp_check(m: RationalMatrix, max_order: int, budget: int = DEFAULT_BUDGET) -> TPReport:
    """Test every minor of order ``<= max_order`` for nonnegativity.

    Minors are visited by increasing size, then lexicographically by row set
    and column set; the first negative one is returned as the witness.
    """
    rows, cols = m.shape
    top = min(max_order, rows, cols)
    needed = count_minors(rows, cols, top)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    entries = m.as_lists(integral_as_int=True)
    checked = 0
    for k in range(1, top + 1):
        col_sets = list(combinations(range(cols), k))
        for rs in combinations(range(rows), k):
            sub_rows = [entries[i] for i in rs]
            for cs in col_sets:
                checked += 1
                value = det([[r[j] for j in cs] for r in sub_rows]) if k > 1 else sub_rows[0][cs[0]]
                if value < 0:
                    witness = {"rows": list(rs), "cols": list(cs), "value": format_rational(value)}
                    return TPReport(max_order, rows, cols, False, witness, checked)
    return TPReport(max_order, rows, cols, True, None, checked)


def toeplitz(seq, size: int) -> RationalMatrix:
    """Lower-triangular ``[a_(i-j)]``; missing terms are zero."""
    a = [Fraction(x) for x in seq]
    get = lambda i: a[i] if i < len(a) else Fraction(0)  # noqa: E731
    return RationalMatrix([[get(i - j) if i >= j else Fraction(0) for j in range(size)] for i in range(size)], size)


def pf_check(seq, max_order: int, size: int, budget: int = DEFAULT_BUDGET) -> TPReport:
    """PF test of a sequence to the given minor order on its ``size x size`` Toeplitz block."""
    return tp_check(toeplitz(seq, size), max_order, budget)
