"""
Truncated formal power series with exact rational coefficients.

A :class:`Series` stores the coefficients of ``t^0 .. t^N`` where ``N`` is its
truncation ``order``; coefficients beyond ``N`` are unknown, not zero.  Every
operation returns the largest order at which its result is still exact, so
``order`` is a contract rather than a hint::

    >>> 1 / Series([1, -1], order=4)
    Series([1, 1, 1, 1, 1], order=4)
    >>> (Series.t(5) + Series.t(5) ** 2) / Series.t(5)
    Series([1, 1, 0, 0, 0], order=4)

Products of series with positive valuation gain precision (the unknown tail of
``a`` is multiplied by the leading power of ``b``), which keeps the graded
series used by multiple Riordan arrays from shrinking at every step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import (
    CompositionWithUnitConstantTerm,
    DivisionByHigherValuation,
    GradingViolation,
    IndexBeyondTruncation,
    InsufficientTruncation,
    LeadingCoefficientNotPerfectPower,
    NotCompositionallyInvertible,
    ValuationNotDivisible,
)

__all__ = [
    "Fraction",
    "GradedSeries",
    "Series",
    "format_rational",
    "parse_rational",
    "rational_root",
    "to_rational",
]

_INF = math.inf


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(q) -> str:
    """Canonical text form: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = to_rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    r = 1 << -(-n.bit_length() // k)  # above the root
    while True:
        y = ((k - 1) * r + n // r ** (k - 1)) // k
        if y >= r:
            break
        r = y
    return r if r**k == n else None


def rational_root(q, k: int) -> Fraction:
    """The positive real k-th root of a positive rational, when it is rational."""
    q = to_rational(q)
    if q <= 0:
        raise LeadingCoefficientNotPerfectPower(f"{format_rational(q)} is not positive")
    num, den = _iroot(q.numerator, k), _iroot(q.denominator, k)
    if num is None or den is None:
        raise LeadingCoefficientNotPerfectPower(
            f"{format_rational(q)} is not the {k}-th power of a rational"
        )
    return Fraction(num, den)


# -- raw truncated kernels on coefficient lists -------------------------------
# All take plain lists of Fractions and a maximum degree; no precision logic.


def _mul_raw(a, b, deg):
    out = [Fraction(0)] * (deg + 1)
    nz_b = [(j, y) for j, y in enumerate(b[: deg + 1]) if y]
    for i, x in enumerate(a[: deg + 1]):
        if not x:
            continue
        lim = deg - i
        for j, y in nz_b:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def _inv_raw(b, deg):
    """1/b to degree deg; b[0] != 0."""
    b0 = b[0]
    out = [Fraction(0)] * (deg + 1)
    out[0] = 1 / b0
    for n in range(1, deg + 1):
        acc = Fraction(0)
        for k in range(1, min(n, len(b) - 1) + 1):
            if b[k]:
                acc += b[k] * out[n - k]
        out[n] = -acc / b0
    return out


def _compose_raw(f, g, deg):
    """f(g) to degree deg by Horner; g[0] == 0."""
    v = next((i for i, x in enumerate(g) if x), None)
    top = len(f) - 1
    if v is None:
        out = [Fraction(0)] * (deg + 1)
        out[0] = f[0] if f else Fraction(0)
        return out
    top = min(top, deg // v)
    out = [Fraction(0)] * (deg + 1)
    out[0] = f[top]
    for n in range(top - 1, -1, -1):
        out = _mul_raw(out, g, deg)
        out[0] += f[n]
    return out


def _power_raw(p, alpha, deg):
    """p**alpha to degree deg for p[0] == 1 and rational alpha (J.C.P. Miller)."""
    out = [Fraction(0)] * (deg + 1)
    out[0] = Fraction(1)
    for n in range(1, deg + 1):
        acc = Fraction(0)
        for k in range(1, min(n, len(p) - 1) + 1):
            if p[k]:
                acc += ((alpha + 1) * k - n) * p[k] * out[n - k]
        out[n] = acc / n
    return out


class Series:
    """Immutable truncated power series ``c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})``.

    Equality compares coefficients up to the smaller of the two orders, so it
    is not transitive and instances are unhashable.
    """

    __slots__ = ("_c", "_order", "_val")

    def __init__(self, coeffs=(), order: int | None = None):
        c = [to_rational(x) for x in coeffs]
        if order is None:
            order = max(len(c) - 1, 0)
        if order < 0:
            raise InsufficientTruncation(f"negative truncation order {order}")
        if len(c) > order + 1:
            c = c[: order + 1]
        else:
            c.extend([Fraction(0)] * (order + 1 - len(c)))
        self._c = tuple(c)
        self._order = order
        self._val = next((i for i, x in enumerate(c) if x), None)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def const(cls, value, order: int) -> "Series":
        return cls([value], order)

    @classmethod
    def t(cls, order: int) -> "Series":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, coeff, power: int, order: int) -> "Series":
        return cls([0] * power + [coeff], order)

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def _raw(cls, coeffs, order):
        # trusted fast path: coeffs already Fractions of the right length
        s = cls.__new__(cls)
        c = tuple(coeffs[: order + 1])
        if len(c) < order + 1:
            c = c + (Fraction(0),) * (order + 1 - len(c))
        s._c = c
        s._order = order
        s._val = next((i for i, x in enumerate(c) if x), None)
        return s

    # -- basic accessors ------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def order(self) -> int:
        return self._order

    @property
    def precision(self) -> int:
        """First exponent whose coefficient is unknown (``order + 1``)."""
        return self._order + 1

    @property
    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient; ``None`` for the zero series."""
        return self._val

    def is_zero(self) -> bool:
        return self._val is None

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self._order:
            raise IndexBeyondTruncation(f"[t^{n}] requested from a series of order {self._order}")
        return self._c[n]

    __getitem__ = coeff

    def __len__(self):
        return self._order + 1

    def truncate(self, order: int) -> "Series":
        if order > self._order:
            raise IndexBeyondTruncation(f"cannot extend order {self._order} to {order}")
        return Series._raw(self._c, order)

    def __repr__(self):
        body = ", ".join(format_rational(x) for x in self._c)
        return f"Series([{body}], order={self._order})"

    def __str__(self):
        terms = []
        for i, x in enumerate(self._c):
            if not x:
                continue
            coef = format_rational(x)
            if i == 0:
                terms.append(coef)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if x == 1 else f"{coef}*{mono}")
        return (" + ".join(terms) or "0") + f" + O(t^{self._order + 1})"

    def to_json(self) -> dict:
        return {"order": self._order, "coeffs": [format_rational(x) for x in self._c]}

    @classmethod
    def from_json(cls, obj) -> "Series":
        return cls(obj["coeffs"], obj["order"])

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self._order, other._order) + 1
        return self._c[:n] == other._c[:n]

    __hash__ = None

    # -- ring operations ------------------------------------------------------
    @staticmethod
    def _coerce(x, order):
        if isinstance(x, Series):
            return x
        return Series.const(to_rational(x), order)

    def __neg__(self):
        return Series._raw([-x for x in self._c], self._order)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, (Series, int, Fraction)):
            return NotImplemented
        other = self._coerce(other, self._order)
        order = min(self._order, other._order)
        return Series._raw([x + y for x, y in zip(self._c[: order + 1], other._c)], order)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (Series, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other, self._order))

    def __rsub__(self, other):
        return (-self) + other

    def _val_or(self, fallback):
        return fallback if self._val is None else self._val

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = to_rational(other)
            return Series._raw([x * q for x in self._c], self._order)
        if not isinstance(other, Series):
            return NotImplemented
        pa, pb = self.precision, other.precision
        va, vb = self._val_or(_INF), other._val_or(_INF)
        prec = min(pa + vb, pb + va, pa + pb)
        deg = prec - 1
        return Series._raw(_mul_raw(list(self._c), list(other._c), deg), deg)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = to_rational(other)
            if q == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self * (1 / q)
        if not isinstance(other, Series):
            return NotImplemented
        vb = other._val
        if vb is None:
            raise DivisionByHigherValuation("division by the zero series")
        if self._val is not None and self._val < vb:
            raise DivisionByHigherValuation(
                f"numerator valuation {self._val} is below denominator valuation {vb}"
            )
        pa, pb = self.precision, other.precision
        if self._val is None:
            # zero numerator: zero result, known as far as the numerator was
            return Series.zero(max(pa - vb - 1, 0))
        prec = min(pa - vb, pb - 2 * vb + self._val)
        deg = prec - 1
        if deg < 0:
            raise InsufficientTruncation("quotient has no known coefficients")
        num = list(self._c[vb:])
        den = list(other._c[vb:])
        return Series._raw(_mul_raw(num, _inv_raw(den, deg), deg), deg)

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Series.const(other, self._order) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            if isinstance(k, Fraction):
                return self.rational_power(k)
            return NotImplemented
        if k < 0:
            return Series.const(1, self._order) / (self ** (-k))
        result = Series.const(1, self._order)
        if k == 0:
            return result
        base, first = self, True
        while k:
            if k & 1:
                result = base if first else result * base
                first = False
            k >>= 1
            if k:
                base = base * base
        return result

    # -- analytic operations --------------------------------------------------
    def derivative(self) -> "Series":
        if self._order == 0:
            raise InsufficientTruncation("derivative of an order-0 series has no known terms")
        return Series._raw([i * self._c[i] for i in range(1, self._order + 1)], self._order - 1)

    def shift(self, k: int) -> "Series":
        """Multiply by ``t^k``; negative ``k`` divides exactly and needs valuation >= -k."""
        if k >= 0:
            return Series._raw([Fraction(0)] * k + list(self._c), self._order + k)
        if self._val is not None and self._val < -k:
            raise DivisionByHigherValuation(f"valuation {self._val} is below {-k}")
        if self._order + k < 0:
            raise InsufficientTruncation("shift leaves no known coefficients")
        return Series._raw(list(self._c[-k:]), self._order + k)

    def compose(self, g: "Series") -> "Series":
        """``self(g(t))``; ``g`` must have zero constant term."""
        if g._c[0] != 0:
            raise CompositionWithUnitConstantTerm(
                f"inner series has constant term {format_rational(g._c[0])}"
            )
        pf, pg = self.precision, g.precision
        tail = next((i for i, x in enumerate(self._c) if i > 0 and x), None)
        if g._val is None:
            prec = max(pf, pg)
        else:
            v = g._val
            prec = v * pf
            if tail is not None:
                prec = min(prec, pg + v * (tail - 1))
        deg = prec - 1
        return Series._raw(_compose_raw(list(self._c), list(g._c), deg), deg)

    __call__ = compose

    def reversion(self, method: str = "solve") -> "Series":
        """Compositional inverse ``u`` with ``self(u) = u(self) = t``.

        ``method="solve"`` runs the triangular system ``sum_k u_k [t^n] f^k = [n=1]``;
        ``method="newton"`` doubles precision by Newton's iteration.  Both give
        identical coefficients.
        """
        if self._val != 1:
            raise NotCompositionallyInvertible(
                f"valuation {self._val} (need exactly 1 for a compositional inverse)"
            )
        if method == "solve":
            return self._reversion_solve()
        if method == "newton":
            return self._reversion_newton()
        raise ValueError(f"unknown reversion method {method!r}")

    def _reversion_solve(self):
        n_max = self._order
        f = list(self._c)
        f1 = f[1]
        u = [Fraction(0)] * (n_max + 1)
        if n_max == 0:
            return Series._raw(u, 0)
        u[1] = 1 / f1
        powers = [None, f]
        for k in range(2, n_max + 1):
            powers.append(_mul_raw(powers[-1], f, n_max))
        lead = Fraction(1)
        for n in range(2, n_max + 1):
            lead *= f1
            acc = Fraction(0)
            for k in range(1, n):
                if u[k]:
                    acc += u[k] * powers[k][n]
            u[n] = -acc / (lead * f1)
        return Series._raw(u, n_max)

    def _reversion_newton(self):
        n_max = self._order
        f = list(self._c)
        df = [i * f[i] for i in range(1, n_max + 1)] + [Fraction(0)]
        u = [Fraction(0), 1 / f[1]]
        known = 2  # u is exact modulo t^known
        while known < n_max + 1:
            target = min(2 * known, n_max + 1)
            deg = target - 1
            u = u + [Fraction(0)] * (deg + 1 - len(u))
            fu = _compose_raw(f, u, deg)
            fu[1] -= 1
            dfu = _compose_raw(df, u, deg)
            corr = _mul_raw(fu, _inv_raw(dfu, deg), deg)
            u = [a - b for a, b in zip(u, corr)]
            known = target
        return Series._raw(u, n_max)

    def root(self, ell: int) -> "Series":
        """The ``ell``-th root whose leading coefficient is the positive real root."""
        if ell < 1:
            raise ValueError("root degree must be positive")
        if ell == 1:
            return self
        v = self._val
        if v is None:
            raise ValuationNotDivisible("root of the zero series")
        if v % ell:
            raise ValuationNotDivisible(f"valuation {v} is not divisible by {ell}")
        lead = self._c[v]
        r0 = rational_root(lead, ell)
        p = [x / lead for x in self._c[v:]]
        deg = self._order - v
        body = _power_raw(p, Fraction(1, ell), deg)
        return Series._raw([Fraction(0)] * (v // ell) + [r0 * x for x in body], deg + v // ell)

    def rational_power(self, alpha) -> "Series":
        """``self ** alpha`` for rational ``alpha``; needs a nonzero constant term."""
        alpha = to_rational(alpha)
        if alpha.denominator == 1:
            return self ** int(alpha)
        if self._val != 0:
            raise ValuationNotDivisible("rational power needs a nonzero constant term")
        c0 = self._c[0]
        lead = rational_root(c0, alpha.denominator) ** alpha.numerator
        p = [x / c0 for x in self._c]
        body = _power_raw(p, alpha, self._order)
        return Series._raw([lead * x for x in body], self._order)

    # -- re-indexing ----------------------------------------------------------
    def decimate(self, ell: int, offset: int = 0) -> "Series":
        """Coefficients at ``offset, offset+ell, ...`` as a new series in ``t``."""
        top = (self._order - offset) // ell
        if top < 0:
            raise InsufficientTruncation("no coefficients at this stride")
        return Series._raw([self._c[offset + k * ell] for k in range(top + 1)], top)

    def expand(self, ell: int) -> "Series":
        """Substitute ``t -> t^ell``."""
        out = [Fraction(0)] * ((self._order + 1) * ell)
        for k, x in enumerate(self._c):
            out[k * ell] = x
        return Series._raw(out, (self._order + 1) * ell - 1)

    def support_residues(self, ell: int) -> set:
        return {i % ell for i, x in enumerate(self._c) if x}


@dataclass(frozen=True, eq=False)
class GradedSeries:
    """A series whose nonzero coefficients all sit at indices ``= residue (mod ell)``."""

    base: Series
    ell: int
    residue: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("grading modulus must be positive")
        if not 0 <= self.residue < self.ell:
            raise ValueError(f"residue {self.residue} outside 0..{self.ell - 1}")
        bad = self.base.support_residues(self.ell) - {self.residue}
        if bad:
            raise GradingViolation(
                f"coefficients at residues {sorted(bad)} mod {self.ell}, expected only {self.residue}"
            )

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        if other.ell != self.ell:
            raise ValueError("grading moduli differ")
        return GradedSeries(self.base * other.base, self.ell, (self.residue + other.residue) % self.ell)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.ell, self.residue) == (other.ell, other.residue) and self.base == other.base

    __hash__ = None
