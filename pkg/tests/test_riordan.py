import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import corpus
from corpus import PRINTED, as_ints, ev
from mrd import riordan as R
from mrd.errors import InsufficientTruncation, InvalidSpec, KindMismatch
from mrd.series import Series


def proper(g, f, order=16):
    return R.RiordanSpec(ev(g, order), ev(f, order))


def test_kind_is_inferred():
    assert proper("1/(1-t)", "t/(1-t)").kind == "proper"
    assert proper("1", "1+t").kind == "type"
    assert proper("1", "t^2").kind == "stretched"


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        proper("t", "t")
    with pytest.raises(InvalidSpec):
        R.RiordanSpec(ev("1"), ev("t"), "type")


def test_build_needs_enough_terms():
    with pytest.raises(InsufficientTruncation):
        R.build(proper("1", "t", 4), 6, 6)


def test_pascal_triangle_inverse_has_signs():
    P = proper("1/(1-t)", "t/(1-t)")
    inv = R.build(R.inv(P), 6, 6)
    assert inv[4, 2] == 6 and inv[5, 2] == -10
    assert R.build(R.mul(P, R.inv(P)), 8, 8) == R.build(R.identity(16), 8, 8)


def test_group_needs_proper():
    with pytest.raises(KindMismatch):
        R.mul(corpus.pascal_square(), corpus.pascal_square())


def test_associate_shifts_rows():
    sq = corpus.delannoy_square()
    tri = R.build(R.associate(sq), 12, 6)
    square = R.build(sq, 12, 6)
    for n in range(6):
        for k in range(6):
            assert tri[n + k, k] == square[n, k]


def test_delannoy_square_print_is_shifted():
    got = as_ints(R.build(corpus.delannoy_square(), 4, 5))
    assert got[2] == [1, 5, 13, 25, 41]
    assert got[3] == [1, 7, 25, 63, 129]
    printed = PRINTED["delannoy_square_printed"]
    assert printed[:2] == got[:2]
    # the printed rows 2 and 3 drop column 1 and run one column ahead
    assert printed[2][1:4] == got[2][2:5]
    assert printed[3][1:4] == got[3][2:5]


def test_production_matrix_of_catalan():
    C = R.RiordanSpec(ev("catalan()", 14), ev("t*catalan()", 14))
    P = R.production_matrix(C, 6)
    assert P == R.production_matrix_solve(C, 6)
    assert as_ints(P)[:3] == [[1, 1, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0], [1, 1, 1, 1, 0, 0]]


def test_recurrence_report_counts():
    sq = corpus.pascal_square()
    rep = R.check_recurrences(sq, 6)
    assert rep.ok and rep.counts["a-rows"] == 30
    assert rep.to_json()["checks"]["z-column"]["violations"] == []


def test_poset_pascal_below_delannoy_entrywise_only():
    cmp = R.poset_compare(corpus.pascal_square(), corpus.delannoy_square(), 6)
    assert cmp.entrywise
    assert not cmp.transit.comparable
    assert cmp.transit.transit[3, 1] == -1


def test_poset_schroeder_pair():
    cmp = R.poset_compare(corpus.schroeder_type("s", 12), corpus.schroeder_type("s^2", 12), 6)
    assert cmp.entrywise and cmp.transit.comparable
    assert cmp.to_json()["transit"]["matrix"]["rows"] == 6


def _riordan(cs):
    g = Series([1] + cs[:6], order=6)
    f = Series([0, 1] + cs[6:11], order=6)
    return R.RiordanSpec(g, f, "proper")


coeffs = st.lists(st.integers(-3, 3), min_size=11, max_size=11)


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs)
def test_build_is_multiplicative(x, y):
    a, b = _riordan(x), _riordan(y)
    assert R.build(R.mul(a, b), 7, 7) == R.build(a, 7, 7) @ R.build(b, 7, 7)


@settings(max_examples=30, deadline=None)
@given(coeffs)
def test_inverse_is_two_sided(x):
    a = _riordan(x)
    one = R.build(R.identity(6), 7, 7)
    assert R.build(R.mul(a, R.inv(a)), 7, 7) == one
    assert R.build(R.mul(R.inv(a), a), 7, 7) == one


def _literal_iterated_a(spec, n, k):
    # sum over l = 0..k and j = 1..n, with no separate a_0^k d[n,0] term
    a = R.a_sequence(spec, n + 2).coeffs
    D = R.build(spec, n + 1, n + k + 2)
    d = lambda i, c: D[i, c] if i >= 0 and c >= 0 else 0  # noqa: E731
    return sum(a[0] ** l * a[j] * d(n - j, k + j - l - 1) for l in range(k + 1) for j in range(1, n + 1))


def test_iterated_a_recurrence_needs_the_boundary_term():
    # without a_0^k d[n,0] the double sum only works when g is a multiple of f
    s1 = corpus.schroeder_type("1", 14)
    assert _literal_iterated_a(s1, 3, 2) != R.build(s1, 4, 3)[3, 2]
    pascal = corpus.pascal_square()
    assert all(_literal_iterated_a(pascal, n, k) == R.build(pascal, 6, 6)[n, k] for n in range(1, 5) for k in range(1, 4))
    assert R.check_recurrences(s1, 8).ok
