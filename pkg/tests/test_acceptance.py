"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (collected again in the
terminal summary).  Run directly with ``python tests/test_acceptance.py`` to
get only those lines.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from gstirling import closed_forms as cf
from gstirling import combinatorics as cb
from gstirling import nested_sums as ns
from gstirling import special_functions as sf
from gstirling import stirling_poly as sp
from gstirling.core import RationalPolynomial, agreement_digits, make_context
from gstirling.quadrature import IntegrandSpec, integrate
from gstirling.verify import BARNES_POINTS

REPORT: list = []
DIGITS = 40


def report(n: int, label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d} {label}: {detail}"
    REPORT.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def ctx():
    return make_context(DIGITS)


def _mpq(M, q: Fraction):
    return M.mpf(q.numerator) / q.denominator


def test_criterion_01_displayed_evaluations(ctx):
    worst, slowest = math.inf, 0.0
    for ident in ns.DISPLAYED_IDENTITIES:
        t = time.perf_counter()
        q = integrate(ns.integrand_polynomial(ident.lows).spec(), ctx)
        c = ns.constant_combination(ident.constants, ctx)
        slowest = max(slowest, time.perf_counter() - t)
        worst = min(worst, agreement_digits(q.value, c.value))
    ok = len(ns.DISPLAYED_IDENTITIES) == 9 and worst >= 40 and slowest <= 60
    report(1, "displayed evaluations", ok, f"9 identities, worst {worst:.1f} digits, slowest {slowest:.2f}s")


def test_criterion_02_fseq_vs_definition(ctx):
    t = time.perf_counter()
    worst = -math.inf
    for j in range(2, 9):
        q = integrate(IntegrandSpec.sech_family([0] * (j - 1) + [1]), ctx)
        worst = max(worst, float(ctx.mp.log10(abs(cf.f_seq(j, ctx).value.value - q.value) or ctx.mp.mpf(10) ** -99)))
    elapsed = time.perf_counter() - t
    ok = worst <= -40 and elapsed <= 600
    report(2, "F_j closed form vs quadrature", ok, f"j=2..8, max |diff| 1e{worst:.1f}, {elapsed:.1f}s")


def test_criterion_03_malmsten(ctx):
    worst = math.inf
    for n in range(1, 7):
        for a, b in ((1, 1), (2, 1), (1, 2)):
            closed = cf.malmsten(n, Fraction(a), Fraction(b), ctx).value
            q = integrate(IntegrandSpec.log_sech(n, a, b), ctx)
            worst = min(worst, agreement_digits(closed.value, q.value))
    report(3, "Malmsten closed form vs quadrature", worst >= 40, f"18 cases, worst {worst:.1f} digits")


def test_criterion_04_exact_polynomial_suites():
    t = time.perf_counter()
    fails = []
    for m in range(61):
        lists = {tuple(map(tuple, sp.p_family(m, meth).coefficient_lists())) for meth in sp.Method}
        if len(lists) != 1:
            fails.append(f"four-way m={m}")
        if sp.p_poly(m, m) != RationalPolynomial.from_roots(range(1, m + 1)):
            fails.append(f"diagonal m={m}")
        for k in range(m + 1):
            p = sp.p_poly(k, m)
            if k and p.derivative() != sp.p_poly(k - 1, m) * (m + 1 - k):
                fails.append(f"derivative m={m} k={k}")
            if p.compose_affine(m + 1, -1) != p * (-1) ** k:
                fails.append(f"reflection m={m} k={k}")
    for n in range(1, 62):
        for k in range(1, n, 2):
            if sp.p_eval(k, n - 1, Fraction(n, 2)) != 0:
                fails.append(f"central n={n} k={k}")
    for n in range(2, 31):
        for h in range(1, n, 2):
            if sp.cycle_cancellation(n, h) != 0:
                fails.append(f"cancellation n={n} h={h}")
    for M in range(1, 16):
        for s in range(M + 1):
            lhs, rhs = sp.cycle_weighted_transform(M, s)
            if lhs != rhs:
                fails.append(f"transform M={M} s={s}")
    elapsed = time.perf_counter() - t
    ok = not fails and elapsed <= 120
    report(4, "exact polynomial and cycle suites", ok, f"{len(fails)} failures, {elapsed:.1f}s")


def test_criterion_05_barnes(ctx):
    worst_red = worst_res = math.inf
    orders = set()
    for n, s, x in BARNES_POINTS:
        red = cf.barnes_zeta(n, s, x, ctx)
        direct = cf.barnes_direct_sum(n, s, x, ctx)
        worst_red = min(worst_red, agreement_digits(red.value, direct.value.value))
        orders.add(n)
    for m in range(5):
        for k in range(m + 1):
            x = Fraction(5, 2) + Fraction(m, 7)
            num = cf.barnes_residue_numeric(m, k, x, ctx)
            worst_res = min(worst_res, agreement_digits(num.value, _mpq(ctx.mp, cf.barnes_residue(m, k, x))))
    ok = len(BARNES_POINTS) == 5 and max(orders) <= 3 and worst_red >= 25 and worst_res >= 25
    report(5, "Barnes reduction and residues", ok,
           f"reduction worst {worst_red:.1f} digits, residues (m<=4) worst {worst_res:.1f} digits")


def test_criterion_06_nested_counting():
    rng = random.Random(20240601)
    mism = 0
    for _ in range(200):
        N = rng.randint(1, 8)
        lows = ns.LowerBounds.of([rng.randint(1, N + 1) for _ in range(N)])
        mism += ns.coeffs(lows) != ns.coeffs_bruteforce(lows)
    vectors = sum(ns.coeffs(lows).c == v for lows, v in ns.DISPLAYED_VECTORS.items())
    sums = all(
        ns.coeffs(ns.LowerBounds.staircase(N)).total == cb.catalan(N)
        and all(ns.coeffs(ns.LowerBounds.common(N, m)).total == cb.binomial(2 * N - m, N - m) for m in range(1, N + 1))
        for N in range(1, 31)
    )
    ok = mism == 0 and vectors == 10 and sums
    report(6, "nested counting", ok, f"200 random lists ({mism} mismatches), {vectors}/10 vectors, sums exact={sums}")


def test_criterion_07_gamma_polygamma(ctx):
    rng = random.Random(7)
    worst = math.inf
    count = 0
    for M in range(1, 11):
        for s in range(M + 1):
            for _ in range(10):
                x = Fraction(rng.randint(-300, 600), rng.randint(2, 29))
                while x.denominator == 1:
                    x += Fraction(1, 7)
                got = sp.near_diagonal_gamma(M, s, x, ctx)
                worst = min(worst, agreement_digits(got.value, _mpq(ctx.mp, sp.p_eval(M - s, M, x))))
                count += 1
    report(7, "gamma-polygamma vs exact", worst >= 30, f"{count} points, worst {worst:.1f} digits")


def test_criterion_08_pi_approximant(ctx):
    M = ctx.mp
    sizes = (10**2, 10**3, 10**4)
    errs = [abs(sp.pi_approximant(n, 1, ctx).value - M.pi**2 / 2) for n in sizes]
    # least-squares slope of log err against log M
    xs = [math.log(n) for n in sizes]
    ys = [float(M.log(e)) for e in errs]
    xm, ym = sum(xs) / 3, sum(ys) / 3
    slope = sum((a - xm) * (b - ym) for a, b in zip(xs, ys)) / sum((a - xm) ** 2 for a in xs)
    rel = abs(sp.pi_sqrt_approximant(10**4, ctx).value / M.pi - 1)
    ok = all(a > b for a, b in zip(errs, errs[1:])) and abs(-slope - 1) <= 0.15 and rel <= 1e-3
    report(8, "pi approximant", ok, f"fitted exponent {-slope:.3f}, relative error at M=1e4 {M.nstr(rel, 3)}")


def test_criterion_09_normalized_limits():
    lctx = make_context(22)
    worst = math.inf
    monotone = True
    for fam in (ns.common(1), ns.common(2), ns.STAIRCASE):
        series = ns.normalized_series(fam, lctx)
        kernel = integrate(ns.limit_kernel(fam), lctx)
        worst = min(worst, agreement_digits(series.value.value, kernel.value))
        gaps = [abs(ns.finite_normalized_sum(fam, N, lctx).value - series.value.value) for N in (20, 40, 80)]
        monotone &= gaps[0] > gaps[1] > gaps[2]
    ok = worst >= 20 and monotone
    report(9, "normalized limits", ok, f"worst series-kernel {worst:.1f} digits, finite-N monotone={monotone}")


def test_criterion_10_pole_machinery(ctx):
    a, b = Fraction(1, 4), Fraction(3, 4)
    at = sf.zeta_prime_diff(1, a, b, ctx)
    digits = agreement_digits(at.value, sf.quarter_gamma_closed_value(ctx).value)
    h = Fraction(1, 10**6)
    up, dn = sf.zeta_prime_diff(1 + h, a, b, ctx), sf.zeta_prime_diff(1 - h, a, b, ctx)
    slope = (up.value - dn.value) / (2 * _mpq(ctx.mp, h))
    cont = True
    for eps in (Fraction(1, 10**6), Fraction(1, 10**15), Fraction(1, 10**30)):
        e = _mpq(ctx.mp, eps)
        for sign in (1, -1):
            near = sf.zeta_prime_diff(1 + sign * eps, a, b, ctx)
            # first-order model; the slope itself is good to O(h^2)
            tol = 10**near.error_exponent + 10**at.error_exponent + 10 * e * e + e * 1e-10
            cont &= abs(near.value - at.value - sign * slope * e) <= tol
    ok = digits >= 35 and cont
    report(10, "pole machinery at s=1", ok, f"closed value {digits:.1f} digits, continuity={cont}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
