import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstirling import closed_forms as cf
from gstirling import special_functions as sf
from gstirling import stirling_poly as sp
from gstirling.core import CapacityError, DomainError, agreement_digits, mp_context
from gstirling.quadrature import IntegrandSpec, integrate

REF = mp_context(80)


def test_f1_is_zero(ctx30):
    assert cf.f_seq(1, ctx30).value.value == 0


@pytest.mark.parametrize("j", [2, 5, 11])
def test_f_seq_matches_quadrature(ctx30, j):
    rep = cf.f_seq(j, ctx30)
    assert rep.value.error_exponent <= -30
    assert rep.pole_terms == (("first", j - 1), ("second", j + 1))
    q = integrate(IntegrandSpec.sech_family([0] * (j - 1) + [1]), ctx30)
    assert agreement_digits(rep.value.value, q.value) > 30


def test_f_seq_monotone(ctx30):
    vals = [cf.f_seq(j, ctx30).value.value for j in range(1, 12)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("n,a,b", [(1, 1, 1), (2, 3, 1), (3, "1/2", "5/2"), (7, 1, 1)])
def test_malmsten(ctx30, n, a, b):
    a, b = Fraction(a), Fraction(b)
    got = cf.malmsten(n, a, b, ctx30).value
    assert agreement_digits(got.value, integrate(IntegrandSpec.log_sech(n, a, b), ctx30).value) > 30


def test_malmsten_scaling(ctx30):
    # substituting x -> x/b: M_n(a, b) = M_n(a/b, 1)/b
    lhs = cf.malmsten(3, Fraction(2), Fraction(3), ctx30).value
    rhs = cf.malmsten(3, Fraction(2, 3), Fraction(1), ctx30).value / 3
    assert agreement_digits(lhs.value, rhs.value) > 30


def test_lambda_delta_relations(ctx30):
    for n in (1, 2, 4):
        lam = cf.lambda_seq(n, ctx30)
        assert agreement_digits(lam.value, integrate(IntegrandSpec.lambda_kernel(n), ctx30).value) > 30
        d = cf.delta_seq(n, ctx30)
        assert agreement_digits(d.value, integrate(IntegrandSpec.sech_family([0] * (n - 1) + [-1, 1]), ctx30).value) > 30


@pytest.mark.parametrize("f,arg", [(cf.f_seq, 0), (cf.lambda_seq, 0), (cf.delta_seq, 0)])
def test_sequence_domains(ctx30, f, arg):
    with pytest.raises(DomainError):
        f(arg, ctx30)


def test_barnes_order_one_is_hurwitz(ctx30):
    v = cf.barnes_zeta(1, Fraction(5, 2), Fraction(1, 3), ctx30)
    assert agreement_digits(v.value, sf.hurwitz_zeta(Fraction(5, 2), Fraction(1, 3), ctx30).value) > 30


def test_barnes_against_mpmath(ctx30):
    # equal-period Barnes zeta of order 2 is sum_K (K+1)(K+x)^-s
    s, x = REF.mpf(9) / 2, REF.mpf(5) / 4
    expect = REF.zeta(s - 1, x) + (1 - x) * REF.zeta(s, x)
    got = cf.barnes_zeta(2, Fraction(9, 2), Fraction(5, 4), ctx30)
    assert agreement_digits(got.value, expect) > 30


@pytest.mark.parametrize("n,s,x", [(3, Fraction(9, 2), Fraction(5, 4)), (2, Fraction(3), Fraction(2))])
def test_barnes_euler_maclaurin_tail(ctx30, n, s, x):
    red = cf.barnes_zeta(n, s, x, ctx30)
    em = cf.barnes_direct_sum(n, s, x, ctx30, tail="euler_maclaurin")
    assert agreement_digits(red.value, em.value.value) > 25


def test_barnes_direct_sum_capacity(ctx30):
    with pytest.raises(CapacityError):
        cf.barnes_direct_sum(2, 3, 2, ctx30)


def test_barnes_domain(ctx30):
    with pytest.raises(DomainError):
        cf.barnes_zeta(3, 2, Fraction(1, 2), ctx30)
    with pytest.raises(DomainError):
        cf.barnes_direct_sum(3, 3, 1, ctx30)
    with pytest.raises(DomainError):
        cf.barnes_zeta(2, 3, 0, ctx30)


def test_adamchik_coefficients():
    # n = 2: zeta_2(s,x) = zeta(s-1,x) + (1-x) zeta(s,x)
    q = cf.adamchik_coefficients(2)
    assert str(q[0]) == "-x + 1" and str(q[1]) == "1"


@settings(max_examples=30)
@given(st.integers(0, 8), st.data(), st.fractions(-5, 5, max_denominator=9))
def test_residue_formula(m, data, x):
    k = data.draw(st.integers(0, m))
    r = cf.barnes_residue(m, k, x)
    assert r == Fraction((-1) ** k) * sp.p_eval(k, m, x) / math.factorial(m)
    assert cf.barnes_residue_poly(m, k)(x) == r


def test_residue_numeric(ctx30):
    for m, k in [(0, 0), (2, 1), (3, 3)]:
        x = Fraction(7, 3)
        got = cf.barnes_residue_numeric(m, k, x, ctx30)
        ex = cf.barnes_residue(m, k, x)
        assert agreement_digits(got.value, REF.mpf(ex.numerator) / ex.denominator) > 25


def test_report_terms_sum(ctx30):
    rep = cf.f_seq(6, ctx30)
    M = ctx30.mp
    total = M.fsum(v.value for _, v in rep.terms)
    assert agreement_digits(total, rep.value.value) > 30
