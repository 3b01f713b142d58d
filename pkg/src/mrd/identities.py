"""Stirling numbers, Grunert and power-sum formulas, umbral and Riordan-sum identities,
and the Fuss-Catalan family.

Every ``*_check`` returns an IdentityReport whose points carry both sides of
the identity, evaluated exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import IndexOutOfRange, InsufficientTruncation, KindMismatch
from .series import Series, format_rational


# -- reports ------------------------------------------------------------------


@dataclass
class IdentityPoint:
    params: dict
    left: Fraction
    right: Fraction

    @property
    def ok(self) -> bool:
        return self.left == self.right

    def to_json(self):
        return {
            "params": {k: format_rational(v) if isinstance(v, Fraction) else v for k, v in self.params.items()},
            "left": format_rational(self.left),
            "right": format_rational(self.right),
            "ok": self.ok,
        }


@dataclass
class IdentityReport:
    identity: str
    points: list = field(default_factory=list)

    def add(self, left, right, **params):
        self.points.append(IdentityPoint(params, Fraction(left), Fraction(right)))

    def extend(self, other: "IdentityReport"):
        self.points.extend(other.points)
        return self

    @property
    def failures(self) -> list:
        return [p for p in self.points if not p.ok]

    @property
    def verdict(self) -> str:
        return "holds" if self.points and not self.failures else "fails"

    @property
    def ok(self) -> bool:
        return self.verdict == "holds"

    def to_json(self):
        return {
            "identity": self.identity,
            "verdict": self.verdict,
            "checked": len(self.points),
            "failures": len(self.failures),
            "points": [p.to_json() for p in self.points],
        }


# -- Stirling numbers ---------------------------------------------------------

_S2 = [[1]]


def stirling2_table(M: int) -> list[list[int]]:
    """Rows ``0..M`` of the Stirling triangle of the second kind."""
    while len(_S2) <= M:
        prev = _S2[-1]
        m = len(_S2)
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = (k * prev[k] if k < m else 0) + prev[k - 1]
        _S2.append(row)
    return [list(r) for r in _S2[: M + 1]]


def stirling2(m: int, k: int) -> int:
    if not 0 <= k <= m:
        raise IndexOutOfRange(f"Stirling number S({m}, {k}) needs 0 <= k <= m")
    stirling2_table(m)
    return _S2[m][k]


def binom(x, k: int) -> Fraction:
    """Generalized binomial ``x (x-1) ... (x-k+1) / k!``; zero for ``k < 0``."""
    if k < 0:
        return Fraction(0)
    if isinstance(x, int) and x >= 0:
        return Fraction(comb(x, k))
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / factorial(k)


# -- Grunert and powers -------------------------------------------------------


def theta_power(f: Series, m: int) -> Series:
    """``(t d/dt)^m f``: coefficient ``c_n`` becomes ``n^m c_n``."""
    return Series([Fraction(n) ** m * c for n, c in enumerate(f.coeffs)], order=f.order)


def grunert_rhs(f: Series, m: int) -> Series:
    """``sum_k S(m,k) t^k f^(k)``; terms with ``k`` past the truncation vanish."""
    out = Series.zero(f.order)
    deriv = f
    for k in range(min(m, f.order) + 1):
        if k:
            deriv = deriv.derivative()
        s = stirling2(m, k)
        if s:
            out = out + s * deriv.shift(k)
    return out


def series_powers(m: int, order: int) -> Series:
    """``sum_k S(m,k) k! t^k / (1-t)^(k+1)``, which should equal ``sum_n n^m t^n``."""
    t = Series.t(order)
    one_minus = 1 - t
    out = Series.zero(order)
    for k in range(m + 1):
        s = stirling2(m, k)
        if s:
            out = out + s * factorial(k) * t**k / one_minus ** (k + 1)
    return out


def grunert_check(f: Series, m: int, order: int | None = None) -> IdentityReport:
    order = f.order if order is None else min(order, f.order)
    report = IdentityReport("grunert")
    lhs, rhs = theta_power(f, m), grunert_rhs(f, m)
    for n in range(order + 1):
        report.add(lhs.coeff(n), rhs.coeff(n), check="theta", m=m, n=n)
    powers = series_powers(m, order)
    for n in range(order + 1):
        report.add(Fraction(n) ** m, powers.coeff(n), check="powers", m=m, n=n)
    return report


# -- umbral identities --------------------------------------------------------


def umbral_sides(m: int, n: int, x) -> tuple:
    """Both sides of the two umbral identities, as ``((l1, r1), (l2, r2))``.

    Powers follow ``0^0 = 1``.
    """
    x = Fraction(x)
    top = min(m, n)
    l1 = sum((comb(n, k) * Fraction(k) ** m * x ** (n - k) for k in range(n + 1)), Fraction(0))
    r1 = sum(
        (stirling2(m, k) * comb(n, k) * factorial(k) * (x + 1) ** (n - k) for k in range(top + 1)),
        Fraction(0),
    )
    l2 = sum(
        (comb(n, k) * Fraction(k) ** m * (-x) ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )
    r2 = sum(
        (stirling2(m, k) * comb(n, k) * factorial(k) * (1 - x) ** (n - k) for k in range(top + 1)),
        Fraction(0),
    )
    return (l1, r1), (l2, r2)


def umbral_check(m: int, n: int, x) -> IdentityReport:
    report = IdentityReport("umbral")
    (l1, r1), (l2, r2) = umbral_sides(m, n, x)
    report.add(l1, r1, form="binomial", m=m, n=n, x=Fraction(x))
    report.add(l2, r2, form="alternating", m=m, n=n, x=Fraction(x))
    return report


# -- Riordan-sum identities ---------------------------------------------------


def _entry(g: Series, f: Series, s: int, j: int) -> Fraction:
    return (g * f**j).coeff(s)


def riosum_sides(spec, m: int, n: int, s: int) -> tuple:
    """Both sides of the two Riordan-sum identities for a proper array ``(g, f)``.

    The shifted arrays ``(g, f + 1)`` and ``(g, f - 1)`` are type arrays;
    ``r_(s,j) = [t^s] g f^j`` vanishes for ``j > s``.
    """
    if spec.kind != "proper":
        raise KindMismatch("Riordan-sum identities start from a proper array")
    if spec.order < s:
        raise InsufficientTruncation(f"spec known to order {spec.order}, row {s} requested")
    g, f = spec.g, spec.f
    cols = range(n + 1)
    r = {j: (_entry(g, f, s, j) if j <= s else Fraction(0)) for j in cols}
    sharp = {j: _entry(g, f + 1, s, j) for j in cols}
    flat = {j: _entry(g, f - 1, s, j) for j in cols}
    top = min(m, n)
    l1 = sum((comb(n, k) * r[n - k] * Fraction(k) ** m for k in cols), Fraction(0))
    r1 = sum((stirling2(m, k) * comb(n, k) * factorial(k) * sharp[n - k] for k in range(top + 1)), Fraction(0))
    l2 = sum((comb(n, k) * (-1) ** (n - k) * r[n - k] * Fraction(k) ** m for k in cols), Fraction(0))
    r2 = sum(
        (stirling2(m, k) * comb(n, k) * (-1) ** (n - k) * factorial(k) * flat[n - k] for k in range(top + 1)),
        Fraction(0),
    )
    return (l1, r1), (l2, r2)


def riosum_check(spec, m: int, n: int, s: int) -> IdentityReport:
    report = IdentityReport("riosum")
    (l1, r1), (l2, r2) = riosum_sides(spec, m, n, s)
    report.add(l1, r1, form="binomial", m=m, n=n, s=s)
    report.add(l2, r2, form="alternating", m=m, n=n, s=s)
    return report


# -- Fuss-Catalan -------------------------------------------------------------


def fuss(ell: int, order: int) -> Series:
    """F with F = 1 + t F^ell, by fixed-point iteration (one new coefficient per pass)."""
    if ell < 1:
        raise ValueError("fuss needs ell >= 1")
    t = Series.t(order)
    F = Series.const(1, order)
    for _ in range(order + 1):
        F = 1 + t * F**ell
        F = F.truncate(order)
    return F


def fuss_number(ell: int, n: int, r: int) -> Fraction:
    """``r / (ell n + r) * C(ell n + r, n)``, written as ``(r / n) C(ell n + r - 1, n - 1)``
    so that ``ell n + r = 0`` causes no trouble."""
    if n == 0:
        return Fraction(1)
    return Fraction(r, n) * binom(ell * n + r - 1, n - 1)


def fuss_power(ell: int, r: int, order: int, method: str = "power") -> Series:
    """``F_ell^r`` by powering the fixed-point series, or from Lambert's closed form."""
    if method == "lambert":
        return Series([fuss_number(ell, n, r) for n in range(order + 1)], order=order)
    if method != "power":
        raise ValueError(f"unknown method {method!r}")
    return fuss(ell, order) ** r


def fuss_riordan_entry(ell: int, p: int, n: int, k: int) -> Fraction:
    """Closed form of ``[t^n] F^p (F - 1)^k``."""
    if n < k:
        return Fraction(0)
    return Fraction(p + ell * k, p + ell * n) * binom(p + ell * n, n - k)


def fuss_type_entry(ell: int, p: int, n: int, k: int) -> Fraction:
    """Closed form of ``[t^n] F^p F^k``."""
    return fuss_number(ell, n, p + k)


@lru_cache(maxsize=64)
def _fuss_columns(ell, p, order, cols, shift):
    F = fuss(ell, order)
    g = F**p
    f = F - 1 if shift else F
    out = [g]
    for _ in range(1, cols):
        out.append(out[-1] * f)
    return tuple(out)


def fuss_identity_sides(ell: int, p: int, m: int, n: int, s: int, literal: bool = False) -> tuple:
    """Both sides of the Fuss-Catalan sum identity.

    The sums run over ``r_(s, n-k)`` and ``r#_(s, n-k)``, the indexing the
    Riordan-sum identity requires.  ``literal=True`` uses index ``k`` in those
    factors instead, as the identity is sometimes displayed; that variant is
    false in general (``ell=2, p=1, m=0, n=1, s=1`` gives 2 against 1).
    """
    idx = (lambda k: k) if literal else (lambda k: n - k)
    left = sum(
        (comb(n, k) * fuss_riordan_entry(ell, p, s, idx(k)) * Fraction(k) ** m for k in range(n + 1)),
        Fraction(0),
    )
    right = sum(
        (
            stirling2(m, k) * comb(n, k) * factorial(k) * fuss_type_entry(ell, p, s, idx(k))
            for k in range(min(m, n) + 1)
        ),
        Fraction(0),
    )
    return left, right


def fuss_identity_check(ell: int, p: int, m: int, n: int, s: int) -> IdentityReport:
    """Three-way check: closed-form entries against series-built ones, the sum
    identity itself, and agreement with the generic Riordan-sum identity."""
    from .riordan import RiordanSpec

    report = IdentityReport("fuss")
    size = max(n, s) + 1
    order = size
    proper_cols = _fuss_columns(ell, p, order, size, True)
    type_cols = _fuss_columns(ell, p, order, size, False)
    for a in range(size):
        for b in range(size):
            report.add(proper_cols[b].coeff(a), fuss_riordan_entry(ell, p, a, b), check="entry-proper", n=a, k=b)
            report.add(type_cols[b].coeff(a), fuss_type_entry(ell, p, a, b), check="entry-type", n=a, k=b)
    left, right = fuss_identity_sides(ell, p, m, n, s)
    report.add(left, right, check="identity", ell=ell, p=p, m=m, n=n, s=s)
    F = fuss(ell, order)
    (l1, r1), _ = riosum_sides(RiordanSpec(F**p, F - 1, "proper"), m, n, s)
    report.add(left, l1, check="riosum-left", ell=ell, p=p, m=m, n=n, s=s)
    report.add(right, r1, check="riosum-right", ell=ell, p=p, m=m, n=n, s=s)
    return report
