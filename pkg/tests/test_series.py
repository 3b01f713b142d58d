from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mrd.errors import (
    CompositionWithUnitConstantTerm,
    DivisionByHigherValuation,
    IndexBeyondTruncation,
    GradingViolation,
    InsufficientTruncation,
    NotCompositionallyInvertible,
    ValuationNotDivisible,
)
from mrd.series import GradedSeries, Series, format_rational, parse_rational

ORDER = 8
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def series(order=ORDER, unit=False, val=None):
    coeffs = st.lists(small, min_size=order + 1, max_size=order + 1)

    def fix(cs):
        cs = list(cs)
        if val is not None:
            cs[:val] = [Fraction(0)] * val
            cs[val] = cs[val] or Fraction(1)
        if unit:
            cs[0] = cs[0] or Fraction(1)
        return Series(cs, order=order)

    return coeffs.map(fix)


def sympy_coeffs(expr, n):
    t = sp.symbols("t")
    ser = sp.series(expr(t), t, 0, n + 1).removeO()
    return [Fraction(int(sp.Rational(ser.coeff(t, k)).p), int(sp.Rational(ser.coeff(t, k)).q)) for k in range(n + 1)]


def test_basic_constructors():
    assert list(Series.t(3).coeffs) == [0, 1, 0, 0]
    assert list(Series.monomial(2, 2, 3).coeffs) == [0, 0, 2, 0]
    assert Series.zero(4).is_zero()
    assert Series.const(3, 2).valuation == 0
    assert Series.zero(4).valuation is None


def test_coeff_past_order_raises():
    with pytest.raises(IndexBeyondTruncation):
        Series.t(3).coeff(4)


def test_json_round_trip():
    s = Series([1, Fraction(-1, 2), 3], order=2)
    obj = s.to_json()
    assert obj == {"order": 2, "coeffs": ["1", "-1/2", "3"]}
    assert Series.from_json(obj) == s


@pytest.mark.parametrize("text", ["0", "-3", "7/2", "-1/9"])
def test_rational_text_round_trip(text):
    assert format_rational(parse_rational(text)) == text


def test_precision_of_products_and_quotients():
    t = Series.t(5)
    assert (t**3 * t**3).order >= 5
    # t^2 is known to order 6, so the quotient is known to order 4
    q = (t**2 + t**3) / t**2
    assert q.order == 4
    assert list(q.coeffs) == [1, 1, 0, 0, 0]


def test_zero_over_unit_is_zero():
    z = Series.zero(6) / (1 + Series.t(6))
    assert z.is_zero()


def test_division_by_higher_valuation():
    t = Series.t(5)
    with pytest.raises(DivisionByHigherValuation):
        t / t**2
    with pytest.raises(DivisionByHigherValuation):
        t / Series.zero(5)


def test_geometric_inverse():
    assert list((1 / (1 - Series.t(6))).coeffs) == [1] * 7


def test_compose_needs_zero_constant():
    with pytest.raises(CompositionWithUnitConstantTerm):
        Series.t(4).compose(1 + Series.t(4))


def test_reversion_requires_valuation_one():
    with pytest.raises(NotCompositionallyInvertible):
        (Series.t(4) ** 2).reversion()
    with pytest.raises(NotCompositionallyInvertible):
        (1 + Series.t(4)).reversion()


def test_root_rules():
    t = Series.t(8)
    assert (4 * (1 + t) ** 2).root(2) == 2 * (1 + t)
    assert (t**3 * (1 - t)).root(3).valuation == 1
    with pytest.raises(ValuationNotDivisible):
        (t**2).root(3)


def test_derivative_of_order_zero():
    with pytest.raises(InsufficientTruncation):
        Series.const(1, 0).derivative()


def test_decimate_and_expand():
    s = Series(list(range(10)), order=9)
    assert list(s.decimate(3).coeffs) == [0, 3, 6, 9]
    assert list(s.decimate(3, 1).coeffs) == [1, 4, 7]
    assert s.expand(2).decimate(2) == s


@pytest.mark.parametrize(
    "ours, theirs",
    [
        (lambda t: (1 - t) ** -3, lambda t: (1 - t) ** -3),
        (lambda t: (1 - 4 * t).rational_power(Fraction(1, 2)), lambda t: sp.sqrt(1 - 4 * t)),
        (lambda t: (1 + t**3).root(3), lambda t: (1 + t**3) ** sp.Rational(1, 3)),
        (lambda t: (t / (1 - t - t**2)).compose(t / (1 + t)), lambda t: (t / (1 + t)) / (1 - t / (1 + t) - (t / (1 + t)) ** 2)),
        (lambda t: (t - t**2).reversion(), lambda t: (1 - sp.sqrt(1 - 4 * t)) / 2),
    ],
)
def test_against_sympy(ours, theirs):
    n = 10
    got = ours(Series.t(n))
    assert got.order >= n
    assert list(got.coeffs[: n + 1]) == sympy_coeffs(theirs, n)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Series.zero(ORDER)


@settings(max_examples=60, deadline=None)
@given(series(), series(unit=True))
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a


@settings(max_examples=40, deadline=None)
@given(series(val=1))
def test_reversion_methods_agree(f):
    u = f.reversion("solve")
    assert u == f.reversion("newton")
    assert f.compose(u) == Series.t(ORDER)
    assert u.compose(f) == Series.t(ORDER)


@settings(max_examples=40, deadline=None)
@given(series(unit=True), st.integers(2, 4))
def test_root_round_trip(a, k):
    p = a * a if k == 2 else a**k
    assume(p.coeffs[0] > 0)
    r = p.root(k)
    assert r**k == p


@settings(max_examples=40, deadline=None)
@given(series(val=1), series(val=1), series())
def test_composition_is_associative(f, g, h):
    assert h.compose(g).compose(f) == h.compose(g.compose(f))


@given(st.integers(2, 4), st.integers(0, 3), st.integers(0, 3))
def test_graded_product_residue(ell, r1, r2):
    r1, r2 = r1 % ell, r2 % ell
    a = GradedSeries(Series.monomial(1, r1, 12) + Series.monomial(2, r1 + ell, 12), ell, r1)
    b = GradedSeries(Series.monomial(3, r2, 12), ell, r2)
    assert (a * b).residue == (r1 + r2) % ell


def test_grading_violation():
    with pytest.raises(GradingViolation):
        GradedSeries(Series([1, 1, 0, 1], order=3), 3, 0)
