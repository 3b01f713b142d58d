"""
ell-multiple Riordan arrays ``(g; f_1, ..., f_ell)`` and multiple Riordan type arrays.

Column ``k`` has generating function ``g f_1 f_2 ... f_(k mod ell) (f_1...f_ell)^(k div ell)``.
For proper arrays ``g`` lives in ``K[[t^ell]]`` and every ``f_i`` in
``t K[[t^ell]]``; for type arrays every ``f_i`` lives in ``K[[t^ell]]`` with
``f_i(0) != 0`` and the associated proper array is ``(g; t f_1, ..., t f_ell)``.

Most formulas pivot on ``h``, the ell-th root of ``f_1 ... f_ell``, and on its
compositional inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import riordan
from .errors import (
    EllMismatch,
    InsufficientTruncation,
    InvalidSpec,
    KindMismatch,
    ResidueOutOfRange,
)
from .matrix import RationalMatrix
from .riordan import RecurrenceReport, RiordanSpec, matrix_from_columns
from .series import GradedSeries, Series, format_rational


@dataclass(frozen=True, eq=False)
class MultiRiordanSpec:
    ell: int
    g: Series
    f: tuple
    kind: str = None

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if self.ell < 2:
            raise InvalidSpec("multiple Riordan arrays need ell >= 2; use the classical module for ell = 1")
        if len(self.f) != self.ell:
            raise InvalidSpec(f"expected {self.ell} multiplier functions, got {len(self.f)}")
        if self.g.coeffs[0] == 0:
            raise InvalidSpec("g(0) must be nonzero")
        vals = {fi.valuation for fi in self.f}
        kind = self.kind
        if kind is None:
            kind = {frozenset({1}): "proper", frozenset({0}): "type"}.get(frozenset(vals))
            if kind is None:
                raise InvalidSpec(f"multipliers have mixed valuations {sorted(vals, key=str)}")
            object.__setattr__(self, "kind", kind)
        if kind not in ("proper", "type"):
            raise InvalidSpec(f"unknown kind {kind!r}")
        want_val, residue = (1, 1) if kind == "proper" else (0, 0)
        GradedSeries(self.g, self.ell, 0)
        for i, fi in enumerate(self.f, 1):
            if fi.valuation != want_val:
                raise InvalidSpec(f"f_{i} has valuation {fi.valuation}, {kind} arrays need {want_val}")
            GradedSeries(fi, self.ell, residue)

    @property
    def order(self) -> int:
        return min([self.g.order] + [fi.order for fi in self.f])

    def __eq__(self, other):
        if not isinstance(other, MultiRiordanSpec):
            return NotImplemented
        return (
            (self.ell, self.kind) == (other.ell, other.kind)
            and self.g == other.g
            and all(a == b for a, b in zip(self.f, other.f))
        )

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ell": self.ell,
            "g": self.g.to_json(),
            "f": [fi.to_json() for fi in self.f],
        }


def identity(ell: int, order: int) -> MultiRiordanSpec:
    t = Series.t(order)
    return MultiRiordanSpec(ell, Series.const(1, order), (t,) * ell, "proper")


def _require_proper(*specs):
    for s in specs:
        if s.kind != "proper":
            raise KindMismatch(f"operation needs proper multiple Riordan arrays, got {s.kind!r}")


def associate(a: MultiRiordanSpec) -> MultiRiordanSpec:
    """``(g; f_1..f_ell) -> (g; t f_1, ..., t f_ell)`` for type arrays."""
    if a.kind != "type":
        raise KindMismatch("only type arrays have an associated proper array")
    return MultiRiordanSpec(a.ell, a.g, tuple(fi.shift(1) for fi in a.f), "proper")


def product_f(a: MultiRiordanSpec, upto: int | None = None) -> Series:
    """``f_1 f_2 ... f_upto`` (all ell factors by default; the empty product is 1)."""
    upto = a.ell if upto is None else upto
    out = Series.const(1, a.order)
    for fi in a.f[:upto]:
        out = out * fi
    return out


def h_series(a: MultiRiordanSpec) -> Series:
    """The ell-th root of ``f_1 ... f_ell`` with positive leading coefficient."""
    return product_f(a).root(a.ell)


def column_series(g: Series, fs, cols: int) -> list[Series]:
    out = [g]
    for k in range(1, cols):
        out.append(out[-1] * fs[(k - 1) % len(fs)])
    return out[:cols]


def mbuild(a: MultiRiordanSpec, rows: int, cols: int) -> RationalMatrix:
    """Entry ``(n, k)`` is ``[t^n] g prod_i f_i^floor((k + ell - i) / ell)``."""
    if a.order < rows - 1:
        raise InsufficientTruncation(f"spec known to order {a.order}, {rows} rows requested")
    return matrix_from_columns(column_series(a.g, a.f, cols), rows)


def mmul(a: MultiRiordanSpec, b: MultiRiordanSpec) -> MultiRiordanSpec:
    """``(g; f_i)(d; h_i) = (g d(h); (f_i / h) h_i(h))``."""
    if a.ell != b.ell:
        raise EllMismatch(f"ell {a.ell} vs {b.ell}")
    _require_proper(a, b)
    h = h_series(a)
    g = a.g * b.g.compose(h)
    fs = tuple((fi / h) * hi.compose(h) for fi, hi in zip(a.f, b.f))
    return MultiRiordanSpec(a.ell, g, fs, "proper")


def minv(a: MultiRiordanSpec) -> MultiRiordanSpec:
    """``(1 / g(hbar); t hbar / f_1(hbar), ..., t hbar / f_ell(hbar))``."""
    _require_proper(a)
    hbar = h_series(a).reversion()
    thbar = hbar.shift(1)
    g = 1 / a.g.compose(hbar)
    fs = tuple(thbar / fi.compose(hbar) for fi in a.f)
    return MultiRiordanSpec(a.ell, g, fs, "proper")


def ft_apply(a: MultiRiordanSpec, vec, residue: int | None = None) -> Series:
    """Multiply the array by a column vector whose GF is supported on one residue class.

    ``vec`` is a GradedSeries, or a Series together with ``residue``.  Returns
    ``g (f_1...f_j / h^j) A_j(h)``, which equals the matrix-vector product.
    """
    _require_proper(a)
    if isinstance(vec, GradedSeries):
        if vec.ell != a.ell:
            raise EllMismatch(f"vector graded mod {vec.ell}, array has ell {a.ell}")
        residue, vec = vec.residue, vec.base
    if residue is None or not 0 <= residue < a.ell:
        raise ResidueOutOfRange(f"residue {residue} outside 0..{a.ell - 1}")
    GradedSeries(vec, a.ell, residue)
    h = h_series(a)
    head = product_f(a, residue)
    if residue:
        head = head / h**residue
    return a.g * head * vec.compose(h)


# -- sums ---------------------------------------------------------------------


@dataclass
class SumGFs:
    rows: int
    row_sums: Series
    diag_sums: Series
    row_sums_matrix: list
    diag_sums_matrix: list
    bivariate_ok: bool

    @property
    def row_ok(self) -> bool:
        return list(self.row_sums.coeffs[: self.rows]) == self.row_sums_matrix

    @property
    def diag_ok(self) -> bool:
        return list(self.diag_sums.coeffs[: self.rows]) == self.diag_sums_matrix

    @property
    def ok(self) -> bool:
        return self.row_ok and self.diag_ok and self.bivariate_ok

    def to_json(self):
        fmt = lambda xs: [format_rational(x) for x in xs]  # noqa: E731
        return {
            "rows": self.rows,
            "row_sums": fmt(self.row_sums.coeffs[: self.rows]),
            "diag_sums": fmt(self.diag_sums.coeffs[: self.rows]),
            "row_sums_matrix": fmt(self.row_sums_matrix),
            "diag_sums_matrix": fmt(self.diag_sums_matrix),
            "bivariate_ok": self.bivariate_ok,
            "ok": self.ok,
        }


def bivariate_columns(a: MultiRiordanSpec, cols: int) -> list[Series]:
    """Coefficients of ``y^0 .. y^(cols-1)`` in ``g (1 + y f_1 + ... ) / (1 - y^ell f_1...f_ell)``.

    The quotient is expanded as a power series in ``y`` whose coefficients are
    series in ``t``.
    """
    order = a.order
    numer = [a.g * product_f(a, j) for j in range(a.ell)]
    denom = {0: Series.const(1, order), a.ell: -product_f(a)}
    inv = [Series.const(1, order)]
    for k in range(1, cols):
        acc = Series.zero(order + k)
        for i, b in denom.items():
            if 0 < i <= k:
                acc = acc - b * inv[k - i]
        inv.append(acc)
    out = []
    for k in range(cols):
        acc = Series.zero(order + k)
        for i in range(min(k, a.ell - 1) + 1):
            acc = acc + numer[i] * inv[k - i]
        out.append(acc)
    return out


def sum_gfs(a: MultiRiordanSpec, rows: int) -> SumGFs:
    """Row-sum and diagonal-sum GFs, each checked against the built matrix.

    Row sums: ``g (1 + f_1 + ... + f_1...f_(ell-1)) / (1 - f_1...f_ell)``.
    Diagonal sums ``sum_k d_(n-k,k)``: the bivariate GF at ``y = t``.
    """
    _require_proper(a)
    t = Series.t(a.order)
    H = product_f(a)
    row_num = sum((product_f(a, j) for j in range(1, a.ell)), Series.const(1, a.order))
    row_gf = a.g * row_num / (1 - H)
    diag_num = sum(
        (product_f(a, j) * t**j for j in range(1, a.ell)), Series.const(1, a.order)
    )
    diag_gf = a.g * diag_num / (1 - t**a.ell * H)
    D = mbuild(a, rows, rows)
    row_m = [sum(D.row(n), Fraction(0)) for n in range(rows)]
    diag_m = [sum((D[n - k, k] for k in range(n // 2 + 1)), Fraction(0)) for n in range(rows)]
    biv = bivariate_columns(a, rows)
    biv_ok = all(biv[k].coeff(n) == D[n, k] for n in range(rows) for k in range(rows))
    return SumGFs(rows, row_gf, diag_gf, row_m, diag_m, biv_ok)


# -- subgroups ----------------------------------------------------------------


def subgroup_membership(a: MultiRiordanSpec) -> dict:
    """Exact-to-truncation membership in the Appell, Lagrange, derivative and Bell subgroups."""
    _require_proper(a)
    t = Series.t(a.order)
    one = Series.const(1, a.order)
    out = {
        "appell": all(fi == t for fi in a.f),
        "lagrange": a.g == one,
        "derivative": a.g == h_series(a).derivative(),
    }
    tg = a.g.shift(1)
    for j, fj in enumerate(a.f, 1):
        out[f"bell_{j}"] = fj == tg
    return out


# -- sequence characterization ------------------------------------------------


@dataclass(eq=False)
class SeqChar:
    """A-sequence and Z_0..Z_(ell-1) sequences, as series supported on multiples of ell."""

    ell: int
    A: Series
    Z: tuple

    def strided(self, s: Series) -> list:
        return list(s.decimate(self.ell).coeffs)

    def a(self) -> list:
        return self.strided(self.A)

    def z(self, m: int) -> list:
        return self.strided(self.Z[m])

    def to_json(self) -> dict:
        fmt = lambda xs: [format_rational(x) for x in xs]  # noqa: E731
        return {
            "ell": self.ell,
            "stride": self.ell,
            "A": fmt(self.a()),
            "Z": [fmt(self.z(m)) for m in range(self.ell)],
        }


def mseq(a: MultiRiordanSpec) -> SeqChar:
    """A and Z_m from ``hbar``, the compositional inverse of ``h``::

        A   = t^ell / hbar^ell
        Z_0 = (1 - g_0 / g(hbar)) / hbar^ell
        Z_m = (1 - g_0 f_11...f_m1 hbar^m / (g(hbar) f_1(hbar)...f_m(hbar))) / hbar^ell

    Type arrays are characterized through their associated proper array.
    """
    if a.kind == "type":
        return mseq(associate(a))
    ell = a.ell
    hbar = h_series(a).reversion()
    hl = hbar**ell
    A = Series.monomial(1, ell, hl.order) / hl
    g0 = a.g.coeffs[0]
    g_h = a.g.compose(hbar)
    Z = [(1 - g0 / g_h) / hl]
    lead = g0
    denom = g_h
    for m in range(1, ell):
        lead *= a.f[m - 1].coeffs[1]
        denom = denom * a.f[m - 1].compose(hbar)
        Z.append((1 - lead * hbar**m / denom) / hl)
    return SeqChar(ell, A, tuple(Z))


def production_matrix(a: MultiRiordanSpec, size: int, seq: SeqChar | None = None) -> RationalMatrix:
    """Production matrix laid out from the sequence characterization.

    Column ``m < ell`` holds ``z_(m,j)`` at row ``m + j ell``; column ``k >= ell``
    holds ``a_j`` at row ``k - ell + j ell``.  It satisfies ``D P = D`` with its
    first ``ell`` rows removed.
    """
    _require_proper(a)
    seq = seq or mseq(a)
    ell = a.ell
    need = (size - 1) // ell
    A = seq.a()
    Zs = [seq.z(m) for m in range(ell)]
    if len(A) <= need or any(len(z) <= need for z in Zs):
        raise InsufficientTruncation(f"sequences too short for a {size}x{size} production matrix")
    P = [[Fraction(0)] * size for _ in range(size)]
    for c in range(size):
        if c < ell:
            for j in range((size - 1 - c) // ell + 1):
                P[c + j * ell][c] = Zs[c][j]
        else:
            for j in range((size - 1 - (c - ell)) // ell + 1):
                P[c - ell + j * ell][c] = A[j]
    return RationalMatrix(P, size)


def production_matrix_solve(a: MultiRiordanSpec, size: int) -> RationalMatrix:
    """Independent route: ``P = inverse(D) @ (D without its first ell rows)``."""
    _require_proper(a)
    D = mbuild(a, size + a.ell, size)
    return D.block(size, size).solve_lower(D.drop_rows(a.ell))


# -- decomposition ------------------------------------------------------------


def decompose(a: MultiRiordanSpec) -> list[RiordanSpec]:
    """``D_j* = (g f_1...f_(j-1) / t^(j-1), f_1...f_ell)`` for ``j = 1..ell``.

    Column ``q`` of ``D_j*`` shifted down ``j - 1`` rows is column ``q ell + j - 1``
    of the multiple array.  The multiplier has valuation ell, so these are
    "stretched" arrays.
    """
    _require_proper(a)
    H = product_f(a)
    parts = []
    for j in range(a.ell):
        gj = (a.g * product_f(a, j)).shift(-j)
        parts.append(RiordanSpec(gj, H, "stretched"))
    return parts


def interleave(parts, ell: int, rows: int, cols: int) -> RationalMatrix:
    out = [[Fraction(0)] * cols for _ in range(rows)]
    for j, part in enumerate(parts):
        qs = (cols - 1 - j) // ell + 1
        if qs <= 0:
            continue
        sub_rows = max(rows - j, 0)
        M = riordan.build(part, sub_rows, qs) if sub_rows else None
        for q in range(qs):
            for n in range(j, rows):
                out[n][q * ell + j] = M[n - j, q]
    return RationalMatrix(out, cols)


# -- type-array recurrences ---------------------------------------------------


def mtype_recurrence_check(a: MultiRiordanSpec, depth: int) -> RecurrenceReport:
    """Check on the ``depth x depth`` block of a type array::

        "a-stride"   d[n,k] = sum_j a_j d[n - j ell, k + ell (j - 1)]       (k >= ell)
        "z0-stride"  d[n,0] = sum_j z_(0,j) d[n - (j+1) ell, j ell]         (n >= 1)
        "zm-stride"  d[n,m] = sum_j z_(m,j) d[n - (j+1) ell, m + j ell]     (1 <= m < ell, n >= 1)
    """
    if a.kind != "type":
        raise KindMismatch("recurrence check is for multiple Riordan type arrays")
    report = RecurrenceReport(depth)
    if depth < 1:
        return report
    ell = a.ell
    seq = mseq(a)
    terms = depth // ell + 2
    A = seq.a()[:terms]
    Zs = [seq.z(m)[:terms] for m in range(ell)]
    wide = 2 * depth + ell
    D = mbuild(a, depth, wide)

    def d(n, k):
        return D[n, k] if n >= 0 else Fraction(0)

    for n in range(depth):
        for k in range(ell, depth):
            rhs = sum((A[j] * d(n - j * ell, k + ell * (j - 1)) for j in range(n // ell + 1)), Fraction(0))
            report.record("a-stride", n, k, D[n, k], rhs)
    for m in range(ell):
        name = "z0-stride" if m == 0 else "zm-stride"
        for n in range(1, depth):
            top = (n - ell) // ell
            rhs = sum((Zs[m][j] * d(n - (j + 1) * ell, m + j * ell) for j in range(top + 1)), Fraction(0))
            report.record(name, n, m, D[n, m], rhs)
    return report
