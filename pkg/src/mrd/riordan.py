"""
Classical Riordan arrays ``(g, f)`` and their square "type" variants.

``kind`` is ``"proper"`` when ``f`` has valuation 1 (lower-triangular array),
``"type"`` when ``f(0) != 0`` (square array, entries ``[t^n] g f^k`` for all
``n, k``).  ``"stretched"`` covers ``val(f) >= 2`` and only arises from the
decomposition of multiple Riordan arrays; it can be built but not multiplied.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IndexBeyondTruncation, InsufficientTruncation, InvalidSpec, KindMismatch
from .matrix import RationalMatrix
from .series import Series, format_rational

KINDS = ("proper", "type", "stretched")


def _infer_kind(f: Series) -> str:
    v = f.valuation
    if v == 0:
        return "type"
    if v == 1:
        return "proper"
    if v is None:
        raise InvalidSpec("f is the zero series")
    return "stretched"


@dataclass(frozen=True, eq=False)
class RiordanSpec:
    g: Series
    f: Series
    kind: str = None

    def __post_init__(self):
        kind = self.kind or _infer_kind(self.f)
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise InvalidSpec(f"unknown kind {kind!r}")
        if self.g.coeffs[0] == 0:
            raise InvalidSpec("g(0) must be nonzero")
        actual = _infer_kind(self.f)
        if actual != kind:
            raise InvalidSpec(f"f has valuation {self.f.valuation}, inconsistent with kind {kind!r}")

    @property
    def order(self) -> int:
        return min(self.g.order, self.f.order)

    def __eq__(self, other):
        if not isinstance(other, RiordanSpec):
            return NotImplemented
        return self.kind == other.kind and self.g == other.g and self.f == other.f

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ell": 1,
            "g": self.g.to_json(),
            "f": [self.f.to_json()],
        }


def identity(order: int) -> RiordanSpec:
    return RiordanSpec(Series.const(1, order), Series.t(order), "proper")


def column_series(spec: RiordanSpec, cols: int) -> list[Series]:
    out = [spec.g]
    for _ in range(1, cols):
        out.append(out[-1] * spec.f)
    return out[:cols]


def matrix_from_columns(columns, rows: int) -> RationalMatrix:
    try:
        return RationalMatrix(
            [[c.coeff(n) for c in columns] for n in range(rows)], len(columns)
        )
    except IndexBeyondTruncation as exc:
        raise InsufficientTruncation(
            f"series are not known far enough for {rows} rows ({exc})"
        ) from None


def build(spec: RiordanSpec, rows: int, cols: int) -> RationalMatrix:
    """Entry ``(n, k)`` is ``[t^n] g f^k``; needs series known to order ``rows - 1``."""
    if spec.order < rows - 1:
        raise InsufficientTruncation(f"spec known to order {spec.order}, {rows} rows requested")
    return matrix_from_columns(column_series(spec, cols), rows)


def _require_proper(*specs):
    for s in specs:
        if s.kind != "proper":
            raise KindMismatch(f"group operations need proper arrays, got {s.kind!r}")


def mul(a: RiordanSpec, b: RiordanSpec) -> RiordanSpec:
    """``(g1, f1)(g2, f2) = (g1 * g2(f1), f2(f1))``."""
    _require_proper(a, b)
    return RiordanSpec(a.g * b.g.compose(a.f), b.f.compose(a.f), "proper")


def inv(a: RiordanSpec) -> RiordanSpec:
    _require_proper(a)
    fbar = a.f.reversion()
    return RiordanSpec(1 / a.g.compose(fbar), fbar, "proper")


def associate(a: RiordanSpec) -> RiordanSpec:
    """``(g, f) -> (g, t f)``: the proper array with ``d_{n,k} = d~_{n+k,k}``."""
    if a.kind != "type":
        raise KindMismatch("only type arrays have an associated proper array")
    return RiordanSpec(a.g, a.f.shift(1), "proper")


def _multiplier(a: RiordanSpec) -> Series:
    if a.kind == "type":
        return a.f.shift(1)
    if a.kind == "proper":
        return a.f
    raise KindMismatch("A/Z sequences need a proper or type array")


def _cut(s: Series, terms: int) -> Series:
    if s.order < terms - 1:
        raise InsufficientTruncation(f"only {s.order + 1} terms are known, {terms} requested")
    return s.truncate(terms - 1)


def a_sequence(a: RiordanSpec, terms: int | None = None) -> Series:
    """``A(t) = t / inverse(t f)`` for type arrays (``t / inverse(f)`` for proper ones)."""
    w = _multiplier(a).reversion()
    A = Series.t(w.order) / w
    return A if terms is None else _cut(A, terms)


def z_sequence(a: RiordanSpec, terms: int | None = None) -> Series:
    """``Z(t) = (1 - d_00 / g(w)) / w`` with ``w`` the inverse of ``t f``."""
    w = _multiplier(a).reversion()
    d00 = a.g.coeffs[0]
    Z = (1 - d00 / a.g.compose(w)) / w
    return Z if terms is None else _cut(Z, terms)


def production_matrix(a: RiordanSpec, size: int) -> RationalMatrix:
    """Z down column 0, A down the later columns starting one row above the diagonal."""
    _require_proper(a)
    A = a_sequence(a, size + 1).coeffs
    Z = z_sequence(a, size).coeffs
    P = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        P[i][0] = Z[i]
        for j in range(1, min(i + 2, size)):
            P[i][j] = A[i - j + 1]
    return RationalMatrix(P, size)


def production_matrix_solve(a: RiordanSpec, size: int) -> RationalMatrix:
    """``inverse(D) @ (D without its first row)`` on the leading block."""
    _require_proper(a)
    D = build(a, size + 1, size)
    return D.block(size, size).solve_lower(D.drop_rows(1))


# -- recurrence verification --------------------------------------------------


@dataclass
class Violation:
    n: int
    k: int
    lhs: Fraction
    rhs: Fraction

    def to_json(self):
        return {"n": self.n, "k": self.k, "lhs": format_rational(self.lhs), "rhs": format_rational(self.rhs)}


@dataclass
class RecurrenceReport:
    depth: int
    checks: dict = field(default_factory=dict)  # name -> list[Violation]
    counts: dict = field(default_factory=dict)  # name -> entries inspected

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    def record(self, name, n, k, lhs, rhs):
        self.checks.setdefault(name, [])
        self.counts[name] = self.counts.get(name, 0) + 1
        if lhs != rhs:
            self.checks[name].append(Violation(n, k, lhs, rhs))

    def to_json(self):
        return {
            "depth": self.depth,
            "ok": self.ok,
            "checks": {
                name: {"inspected": self.counts.get(name, 0), "violations": [v.to_json() for v in vs]}
                for name, vs in self.checks.items()
            },
        }


def _working_order(spec, needed):
    if spec.order < needed:
        raise InsufficientTruncation(f"spec known to order {spec.order}, need {needed}")


def check_recurrences(a: RiordanSpec, depth: int) -> RecurrenceReport:
    """Check the A/Z recurrences and their iterated forms on the ``depth x depth`` block.

    ``"a-rows"``      d[n,k] = sum_j a_j d[n-j, k+j-1]                       (k >= 1)
    ``"z-column"``    d[n,0] = sum_j z_j d[n-j-1, j]                         (n >= 1)
    ``"a-iterated"``  d[n,k] = a_0^k d[n,0] + sum_{l<k} sum_{j>=1} a_0^l a_j d[n-j, k+j-l-1]
    ``"z-iterated"``  d[n,0] = z_0^n d[0,0] + sum_{l>=1} sum_{j>=1} z_0^(l-1) z_j d[n-j-l, j]
    """
    if a.kind != "type":
        raise KindMismatch("recurrence check is for type arrays")
    report = RecurrenceReport(depth)
    if depth < 1:
        return report
    _working_order(a, depth - 1)
    A = a_sequence(a, depth + 1)
    Z = z_sequence(a, depth + 1)
    wide = 2 * depth + 1
    D = build(a, depth, wide)

    def d(n, k):
        return D[n, k] if n >= 0 and k >= 0 else Fraction(0)

    a_, z_ = A.coeffs, Z.coeffs
    for n in range(depth):
        for k in range(1, depth):
            rhs = sum((a_[j] * d(n - j, k + j - 1) for j in range(n + 1)), Fraction(0))
            report.record("a-rows", n, k, D[n, k], rhs)
            rhs = a_[0] ** k * d(n, 0) + sum(
                (a_[0] ** l * a_[j] * d(n - j, k + j - l - 1) for l in range(k) for j in range(1, n + 1)),
                Fraction(0),
            )
            report.record("a-iterated", n, k, D[n, k], rhs)
    for n in range(1, depth):
        rhs = sum((z_[j] * d(n - j - 1, j) for j in range(n)), Fraction(0))
        report.record("z-column", n, 0, D[n, 0], rhs)
        rhs = z_[0] ** n * D[0, 0] + sum(
            (z_[0] ** (l - 1) * z_[j] * d(n - j - l, j) for l in range(1, n) for j in range(1, n - l + 1)),
            Fraction(0),
        )
        report.record("z-iterated", n, 0, D[n, 0], rhs)
    return report


# -- matrix poset -------------------------------------------------------------


@dataclass
class TransitWitness:
    comparable: bool
    transit: RationalMatrix | None = None


@dataclass
class PosetComparison:
    depth: int
    entrywise: bool
    transit: TransitWitness

    def to_json(self):
        t = self.transit
        return {
            "depth": self.depth,
            "entrywise": self.entrywise,
            "transit": {
                "comparable": t.comparable,
                "matrix": t.transit.to_json() if t.transit is not None else None,
            },
        }


def _nonneg_integral(m: RationalMatrix) -> bool:
    return m.is_integral() and m.is_nonnegative()


def poset_compare(a: RiordanSpec, b: RiordanSpec, depth: int) -> PosetComparison:
    """Entrywise order on the type arrays and the transit matrix of their associated arrays.

    Both verdicts hold to the inspected depth only.  The transit matrix is
    ``inverse(A~) B~`` on the associated proper arrays and makes the pair
    comparable when all its inspected entries are nonnegative integers.
    """
    if a.kind != "type" or b.kind != "type":
        raise KindMismatch("poset comparison is defined on type arrays")
    A, B = build(a, depth, depth), build(b, depth, depth)
    entrywise = all(x <= y for ra, rb in zip(A.entries, B.entries) for x, y in zip(ra, rb))
    if not (_nonneg_integral(A) and _nonneg_integral(B)):
        return PosetComparison(depth, entrywise, TransitWitness(False, None))
    At = build(associate(a), depth, depth)
    Bt = build(associate(b), depth, depth)
    T = At.solve_lower(Bt)
    return PosetComparison(depth, entrywise, TransitWitness(_nonneg_integral(T), T))
