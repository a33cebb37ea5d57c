from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gstirling import combinatorics as cb
from gstirling import nested_sums as ns
from gstirling.core import CapacityError, DiagnosticsError, DomainError, agreement_digits, make_context
from gstirling.quadrature import integrate


@st.composite
def lower_bounds(draw, max_n=8):
    N = draw(st.integers(1, max_n))
    return ns.LowerBounds.of(draw(st.lists(st.integers(1, N + 1), min_size=N, max_size=N)))


@given(lower_bounds())
def test_recurrence_matches_bruteforce(lows):
    assert ns.coeffs(lows) == ns.coeffs_bruteforce(lows)


@given(st.integers(1, 60), st.data())
def test_closed_vectors(N, data):
    m = data.draw(st.integers(1, N))
    for fam in (ns.common(m), ns.STAIRCASE):
        v = ns.coeffs(fam.lows(N))
        assert v == ns.coeffs_closed(fam, N)
        assert v.total == ns.closed_total(fam, N)


def test_totals():
    assert all(ns.coeffs(ns.LowerBounds.staircase(N)).total == cb.catalan(N) for N in range(1, 31))


def test_displayed_vectors():
    assert len(ns.DISPLAYED_VECTORS) == 10
    for lows, v in ns.DISPLAYED_VECTORS.items():
        assert ns.coeffs(lows).c == v


def test_vector_helpers():
    v = ns.coeffs(ns.LowerBounds.staircase(5))
    assert v[1] == 14 and v[5] == 1
    assert sum(v.normalized()) == 1
    assert v.weight_polynomial()(1) == v.total


def test_symbolic_and_integrand_strings():
    lows = ns.LowerBounds.common(6, 2)
    assert ns.symbolic_rhs(lows) == "126*F[2]+56*F[3]+21*F[4]+6*F[5]+F[6]"
    assert str(ns.integrand_polynomial(ns.LowerBounds.staircase(3))) == "(3 sech x - 2 sech^2 x - sech^3 x)/x^2"
    ip = ns.integrand_polynomial(ns.LowerBounds.common(3, 2))
    assert ip.small_x_coefficient == Fraction(5, 2)


def test_integral_equals_rhs(ctx30):
    for lows in (ns.LowerBounds.of([1, 3, 3, 4]), ns.LowerBounds.of([2, 2, 5, 5, 5])):
        q = integrate(ns.integrand_polynomial(lows).spec(), ctx30)
        r = ns.rhs_closed_form(lows, ctx30).value
        assert agreement_digits(q.value, r.value) > 30


def test_displayed_identity_sample(ctx30):
    ident = ns.DISPLAYED_IDENTITIES[1]
    c = ns.constant_combination(ident.constants, ctx30)
    assert agreement_digits(ns.rhs_closed_form(ident.lows, ctx30).value.value, c.value) > 30


def test_bounds_validation():
    with pytest.raises(DomainError):
        ns.LowerBounds.of([])
    with pytest.raises(DomainError):
        ns.LowerBounds.of([0, 1])
    with pytest.raises(CapacityError):
        ns.coeffs_bruteforce(ns.LowerBounds.staircase(ns.BRUTEFORCE_BOUND + 1))
    with pytest.raises(DomainError):
        ns.coeffs_closed(ns.common(5), 3)


def test_normalized_weights_sum_to_one():
    assert sum(ns.normalized_weight(ns.common(3), j) for j in range(1, 200)) == pytest.approx(1, abs=1e-40)
    assert sum(ns.normalized_weight(ns.STAIRCASE, j) for j in range(1, 200)) == pytest.approx(1, abs=1e-40)


def test_series_reports_truncation():
    ctx = make_context(12)
    rep = ns.normalized_series(ns.common(2), ctx)
    assert rep.tail_bound <= -14
    kernel = integrate(ns.limit_kernel(ns.common(2)), ctx)
    assert agreement_digits(rep.value.value, kernel.value) > 12


def test_series_gives_up_loudly():
    with pytest.raises(DiagnosticsError):
        ns.normalized_series(ns.STAIRCASE, make_context(20), jmax=12)
