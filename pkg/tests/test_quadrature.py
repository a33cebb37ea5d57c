from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstirling.core import DomainError, PrecisionError, agreement_digits, make_context, mp_context
from gstirling.quadrature import (
    IntegrandSpec,
    chi_interpolated,
    integrand_value,
    integrate,
    integrate_report,
)

REF = mp_context(80)


def test_malmsten_first_case(ctx40):
    # int_0^inf log x sech x dx = pi log(sqrt(2 pi) Gamma(3/4) / Gamma(1/4))
    expect = REF.pi * REF.log(REF.sqrt(2 * REF.pi) * REF.gamma(0.75) / REF.gamma(0.25))
    got = integrate(IntegrandSpec.log_sech(1, 1, 1), ctx40)
    assert got.error_exponent <= -40
    assert agreement_digits(got.value, expect) > 40


def test_lambda_one(ctx40):
    # int_0^inf tanh x sech x / x dx = 4G/pi
    got = integrate(IntegrandSpec.lambda_kernel(1), ctx40)
    assert agreement_digits(got.value, 4 * REF.catalan / REF.pi) > 40


def test_chi_two_against_mpmath(ctx30):
    M = mp_context(60)
    f = lambda x: (M.sech(x) - M.sech(x) ** 2) / x**2
    expect = M.quad(f, [0, 1, 10, M.inf])
    assert agreement_digits(chi_interpolated(2, ctx30).value, expect) > 30


def test_chi_one_is_zero(ctx30):
    assert chi_interpolated(1, ctx30).value == 0


@pytest.mark.parametrize("s", [Fraction(1, 2), Fraction(5, 2), Fraction(7)])
def test_chi_power_matches_integer_family(ctx30, s):
    if s.denominator == 1:
        j = int(s)
        fam = integrate(IntegrandSpec.sech_family([0] * (j - 1) + [1]), ctx30)
        assert agreement_digits(fam.value, chi_interpolated(s, ctx30).value) > 30
    else:
        assert chi_interpolated(s, ctx30).error_exponent <= -30


@settings(max_examples=25)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=7))
def test_small_x_limit(weights):
    # numerator order-x^2 coefficient: sum (j-1) c_j / 2
    ctx = make_context(30)
    spec = IntegrandSpec.sech_family(weights)
    x = ctx.mp.mpf(10) ** (-ctx.working_digits // 4)
    expect = Fraction(sum((j - 1) * c for j, c in enumerate(weights, start=1)), 2)
    got = integrand_value(spec, x, ctx)
    assert abs(got - ctx.mp.mpf(expect.numerator) / expect.denominator) < 10 ** -(ctx.working_digits // 2 - 2)


def test_stable_forms_near_zero(ctx30):
    M = ctx30.mp
    tiny = M.mpf(10) ** -25
    assert integrand_value(IntegrandSpec.limit_common(1), tiny, ctx30) == pytest.approx(0.5, abs=1e-20)
    assert integrand_value(IntegrandSpec.limit_staircase(), tiny, ctx30) == pytest.approx(1.0, abs=1e-20)
    assert integrand_value(IntegrandSpec.chi_power(Fraction(5, 2)), tiny, ctx30) == pytest.approx(0.75, abs=1e-20)


def test_large_x_no_overflow(ctx30):
    for spec in (IntegrandSpec.log_sech(3, 1, 2), IntegrandSpec.chi_power(3), IntegrandSpec.sech_family([1, 2, 3])):
        assert integrand_value(spec, 10**6, ctx30) == 0 or abs(integrand_value(spec, 10**6, ctx30)) < 1e-100


def test_report_fields(ctx30):
    rep = integrate_report(IntegrandSpec.sech_family([0, 1]), ctx30)
    assert rep.levels >= 3 and rep.nodes > 0
    assert rep.last_difference_exponent <= -32


def test_stall_raises_precision_error(ctx30):
    with pytest.raises(PrecisionError) as info:
        integrate_report(IntegrandSpec.log_sech(2, 1, 1), ctx30, max_level=2)
    assert info.value.estimate is not None


@pytest.mark.parametrize("bad", [
    lambda: IntegrandSpec.log_sech(0),
    lambda: IntegrandSpec.log_sech(1, -1, 1),
    lambda: IntegrandSpec.chi_power(0),
    lambda: IntegrandSpec.limit_common(0),
    lambda: IntegrandSpec.lambda_kernel(0),
])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        bad()


def test_zero_integrand(ctx30):
    assert integrate(IntegrandSpec.sech_family([5]), ctx30).value == 0
