"""Self-verification suites: every identity checked against an independent route.

Each check yields a :class:`CheckResult` with the number of agreeing digits
(``math.inf`` for exact comparisons) and a pass flag.  The suites are used by
the ``verify`` CLI command and by the experiment scripts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import closed_forms as cf
from . import combinatorics as cb
from . import nested_sums as ns
from . import special_functions as sf
from . import stirling_poly as sp
from .core import DomainError, PrecisionContext, RationalPolynomial, agreement_digits, make_context
from .quadrature import IntegrandSpec, integrate

SUITES = ("poly", "cycles", "barnes", "closed_forms", "nested", "limits")
LIMIT_DIGITS = 20  # the normalized series are checked at this many digits


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    digits: float
    passed: bool
    detail: str = ""

    @property
    def digits_text(self) -> str:
        return "inf" if self.digits == math.inf else f"{self.digits:.1f}"


def _exact(suite: str, name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(suite, name, math.inf if ok else 0.0, ok, detail)


def _numeric(suite: str, name: str, a, b, need: float) -> CheckResult:
    d = agreement_digits(a, b)
    return CheckResult(suite, name, d, d >= need)


# --------------------------------------------------------------------------- #


def poly_suite(ctx: PrecisionContext, m_max: int = 60) -> Iterator[CheckResult]:
    S = "poly"
    ok = all(
        len({tuple(sp.p_family(m, meth).coefficient_lists()) for meth in sp.Method}) == 1
        for m in range(m_max + 1)
    )
    yield _exact(S, f"four constructions agree, m<={m_max}", ok)
    ok = all(sp.p_poly(m, m) == RationalPolynomial.from_roots(range(1, m + 1)) for m in range(m_max + 1))
    yield _exact(S, f"diagonal P_m(m,x) = (x-1)...(x-m), m<={m_max}", ok)
    ok = all(
        sp.p_poly(k, m).derivative() == sp.p_poly(k - 1, m) * (m + 1 - k)
        for m in range(1, m_max + 1)
        for k in range(1, m + 1)
    )
    yield _exact(S, f"derivative identity, m<={m_max}", ok)
    ok = all(
        sp.p_poly(k, m).compose_affine(m + 1, -1) == sp.p_poly(k, m) * (-1) ** k
        for m in range(m_max + 1)
        for k in range(m + 1)
    )
    yield _exact(S, f"reflection x -> m+1-x, m<={m_max}", ok)
    ok = all(
        sp.p_eval(k, n - 1, Fraction(n, 2)) == 0 for n in range(1, m_max + 1) for k in range(1, n, 2)
    )
    yield _exact(S, f"central vanishing at odd k, n<={m_max}", ok)
    ok = all(
        sp.p_eval(k, m, 0) == (-1) ** k * cb.stirling1(m + 1, m - k + 1) for m in range(11) for k in range(m + 1)
    )
    yield _exact(S, "x=0 column equals signed cycle numbers, m<=10", ok)
    rng = random.Random(7)
    ok = True
    for m in range(1, 26):
        for _ in range(20):
            x = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
            vals = [x - r for r in range(1, m + 1)]
            ok &= all(sp.p_eval(k, m, x) == cb.elementary_symmetric(vals, k) for k in range(m + 1))
    yield _exact(S, "elementary-symmetric identification, m<=25", ok)
    worst = math.inf
    for M in range(1, 11):
        for s in range(M + 1):
            for _ in range(3):
                x = Fraction(rng.randint(M * 10 + 1, M * 10 + 90), 7) + Fraction(1, 13)
                got = sp.near_diagonal_gamma(M, s, x, ctx)
                ref = sp.p_eval(M - s, M, x)
                worst = min(worst, agreement_digits(got.value, ctx.mp.mpf(ref.numerator) / ref.denominator))
    yield CheckResult(S, "gamma-polygamma vs exact values, M<=10", worst, worst >= ctx.target_digits - 10)


def cycles_suite(ctx: PrecisionContext) -> Iterator[CheckResult]:
    S = "cycles"
    ok = all(sp.cycle_cancellation(n, h) == 0 for n in range(2, 31) for h in range(1, n, 2))
    yield _exact(S, "cancellation identities, n<=30, all odd h", ok)
    ok = all(a == b for M in range(1, 16) for s in range(M + 1) for a, b in [sp.cycle_weighted_transform(M, s)])
    yield _exact(S, "weighted binomial transform, M<=15", ok)
    ok = all(a == b for M in range(1, 16) for s in range(M + 1) for a, b in [sp.cycle_weighted_transform_shifted(M, s)])
    yield _exact(S, "shifted weighted transform, M<=15", ok)
    ok = all(
        sp.rbar_poly(M, s)(-(M + 1)) == (-1) ** (M - s) * cb.stirling1(M + 1, s + 1)
        for M in range(1, 9)
        for s in range(M + 1)
    )
    yield _exact(S, "second r-Stirling polynomial at -(M+1), M<=8", ok)
    ok = all(a == b for m in range(9) for k in range(m + 1) for r in range(5) for a, b in [sp.p_r_stirling_bridge(k, m, r)])
    yield _exact(S, "P_k(m,-r) equals signed r-Stirling numbers", ok)
    ok = all(cb.stirling1_two_sum(n, k) == cb.stirling1(n, k) for n in range(1, 26) for k in range(1, n + 1))
    yield _exact(S, "two-sum formula for cycle numbers, n<=25", ok)
    ok = all(cb.stirling2_surjection(n, k) == cb.stirling2(n, k) for n in range(20) for k in range(n + 1))
    yield _exact(S, "surjection formula for second-kind numbers, n<20", ok)


BARNES_POINTS = (
    (1, Fraction(12), Fraction(1, 3)),
    (2, Fraction(15), Fraction(2)),
    (2, Fraction(37, 2), Fraction(1, 2)),
    (3, Fraction(20), Fraction(5, 4)),
    (3, Fraction(31, 2), Fraction(7, 3)),
)


def barnes_suite(ctx: PrecisionContext) -> Iterator[CheckResult]:
    S = "barnes"
    need = min(25, ctx.target_digits)
    for n, s, x in BARNES_POINTS:
        red = cf.barnes_zeta(n, s, x, ctx)
        direct = cf.barnes_direct_sum(n, s, x, ctx).value
        yield _numeric(S, f"reduction vs direct sum n={n} s={s} x={x}", red.value, direct.value, need)
    for m in range(5):
        for k in range(m + 1):
            x = Fraction(5, 2) + Fraction(m, 7)
            num = cf.barnes_residue_numeric(m, k, x, ctx)
            ex = cf.barnes_residue(m, k, x)
            yield _numeric(S, f"residue m={m} k={k} x={x}", num.value, ctx.mp.mpf(ex.numerator) / ex.denominator, need)
    ok = all(
        cf.barnes_residue_poly(m, k).compose_affine(m + 1, -1) == cf.barnes_residue_poly(m, k) * (-1) ** k
        for m in range(21)
        for k in range(m + 1)
    )
    yield _exact(S, "residue reflection, m<=20", ok)
    ok = all(
        cf.barnes_residue_poly(m, k).derivative() == cf.barnes_residue_poly(m, k - 1) * (-(m + 1 - k))
        for m in range(1, 21)
        for k in range(1, m + 1)
    )
    yield _exact(S, "residue differentiation, m<=20", ok)


def closed_forms_suite(ctx: PrecisionContext) -> Iterator[CheckResult]:
    S = "closed_forms"
    D = ctx.target_digits
    for j in range(2, 9):
        q = integrate(IntegrandSpec.sech_family([0] * (j - 1) + [1]), ctx)
        yield _numeric(S, f"F_{j} vs quadrature", cf.f_seq(j, ctx).value.value, q.value, D)
    for n in range(1, 7):
        for a, b in ((1, 1), (2, 1), (1, 2)):
            q = integrate(IntegrandSpec.log_sech(n, a, b), ctx)
            yield _numeric(S, f"M_{n}({a},{b}) vs quadrature", cf.malmsten(n, a, b, ctx).value.value, q.value, D)
    for n in (1, 2, 3):
        q = integrate(IntegrandSpec.lambda_kernel(n), ctx)
        yield _numeric(S, f"lambda_{n} vs quadrature", cf.lambda_seq(n, ctx).value, q.value, D)
    for n in (1, 2, 3):
        q = integrate(IntegrandSpec.sech_family([0] * (n - 1) + [-1, 1]), ctx)
        yield _numeric(S, f"delta_{n} vs quadrature", cf.delta_seq(n, ctx).value, q.value, D)
    zd = sf.zeta_prime_diff(1, Fraction(1, 4), Fraction(3, 4), ctx)
    yield _numeric(S, "zeta' difference at s=1, shifts 1/4 and 3/4", zd.value, sf.quarter_gamma_closed_value(ctx).value, D - 5)
    for m in range(1, 6):
        zd = sf.zeta_prime_diff(1, Fraction(m, 2), Fraction(m + 1, 2), ctx)
        yield _numeric(S, f"half-shift closed value m={m}", zd.value, sf.half_shift_closed_value(m, ctx).value, D - 5)


def nested_suite(ctx: PrecisionContext) -> Iterator[CheckResult]:
    S = "nested"
    ok = all(ns.coeffs(lows).c == v for lows, v in ns.DISPLAYED_VECTORS.items())
    yield _exact(S, "displayed multiplicity vectors", ok)
    rng = random.Random(11)
    ok = True
    for _ in range(200):
        N = rng.randint(1, 8)
        lows = ns.LowerBounds.of([rng.randint(1, N + 1) for _ in range(N)])
        ok &= ns.coeffs(lows) == ns.coeffs_bruteforce(lows)
    yield _exact(S, "recurrence vs brute force, 200 random lists", ok)
    ok = all(
        ns.coeffs(ns.STAIRCASE.lows(N)).total == cb.catalan(N)
        and all(ns.coeffs(ns.common(m).lows(N)).total == cb.binomial(2 * N - m, N - m) for m in range(1, N + 1))
        for N in range(1, 31)
    )
    yield _exact(S, "Catalan and hockey-stick totals, N<=30", ok)
    D = ctx.target_digits
    for ident in ns.DISPLAYED_IDENTITIES:
        q = integrate(ns.integrand_polynomial(ident.lows).spec(), ctx)
        c = ns.constant_combination(ident.constants, ctx)
        yield _numeric(S, f"{ident.name}: integral vs constants", q.value, c.value, D)
        yield _numeric(S, f"{ident.name}: F-combination vs constants", ns.rhs_closed_form(ident.lows, ctx).value.value, c.value, D)


def limits_suite(ctx: PrecisionContext) -> Iterator[CheckResult]:
    S = "limits"
    lctx = make_context(min(ctx.target_digits, LIMIT_DIGITS) + 2)
    for fam in (ns.common(1), ns.common(2), ns.STAIRCASE):
        label = f"common m={fam.m}" if fam.kind == "common" else "staircase"
        series = ns.normalized_series(fam, lctx)
        kernel = integrate(ns.limit_kernel(fam), lctx)
        yield _numeric(S, f"{label}: series vs kernel", series.value.value, kernel.value, LIMIT_DIGITS)
        gaps = [abs(ns.finite_normalized_sum(fam, N, lctx).value - series.value.value) for N in (20, 40, 80)]
        ok = gaps[0] > gaps[1] > gaps[2]
        yield CheckResult(S, f"{label}: finite-N gaps shrink (N=20,40,80)", math.inf if ok else 0.0, ok,
                          ", ".join(lctx.mp.nstr(g, 3) for g in gaps))


_SUITE_FNS: dict = {
    "poly": poly_suite,
    "cycles": cycles_suite,
    "barnes": barnes_suite,
    "closed_forms": closed_forms_suite,
    "nested": nested_suite,
    "limits": limits_suite,
}


def run_suite(name: str, ctx: PrecisionContext) -> Iterator[CheckResult]:
    names = SUITES if name == "all" else (name,)
    for n in names:
        fn: Callable = _SUITE_FNS[n]
        yield from fn(ctx)


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


def verify(suite: str, ctx: PrecisionContext) -> VerifyReport:
    """Run ``suite`` (or ``"all"``) and collect every check."""
    if suite != "all" and suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}")
    return VerifyReport(tuple(run_suite(suite, ctx)))
