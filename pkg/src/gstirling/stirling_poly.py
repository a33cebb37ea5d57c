"""Signed generalized Stirling polynomials P_k(m, x) and the identities built on them.

P_k(m, x) is the coefficient polynomial in

    (j+1)(j+2)...(j+m) = sum_k (-1)^k P_k(m, x) (j+x)^(m-k),

equivalently P_k(m, x) = e_k(x-1, x-2, ..., x-m).  Four independent
constructions are provided and are expected to agree coefficient by
coefficient.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import binomial, e_from_p, elementary_symmetric, partitions, r_stirling1, stirling1
from .core import (
    CapacityError,
    DomainError,
    HPReal,
    PrecisionContext,
    PrecisionError,
    RationalPolynomial,
    to_mpf,
)

FAMILY_BOUND = 200
NEWTON_BOUND = 120


class Method(str, enum.Enum):
    EXPLICIT = "explicit"
    PRODUCT = "product"
    STEP = "step"
    NEWTON = "newton"


@dataclass(frozen=True)
class PFamily:
    m: int
    polys: tuple
    construction_method: Method

    def __getitem__(self, k: int) -> RationalPolynomial:
        if k < 0 or k > self.m:
            return RationalPolynomial()
        return self.polys[k]

    def coefficient_lists(self) -> list:
        return [p.coeffs for p in self.polys]


def _explicit(m: int) -> list:
    polys = []
    for k in range(m + 1):
        coeffs = [
            (-1) ** (k - r) * binomial(r + m - k, m - k) * stirling1(m + 1, r + m - k + 1)
            for r in range(k + 1)
        ]
        polys.append(RationalPolynomial(coeffs))
    return polys


def _imul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _iadd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return out


# The three recursive builders below work on integer coefficient lists: every
# P_k(m, x) has integer coefficients, and ints are far cheaper than Fractions.


def _product(m: int) -> list:
    # prod_{i=1}^m (y + i - x), held as a list over powers of y of polynomials in x
    byy = [[1]]
    for i in range(1, m + 1):
        shift = [i, -1]
        new = [[] for _ in range(len(byy) + 1)]
        for d, c in enumerate(byy):
            new[d + 1] = _iadd(new[d + 1], c)
            new[d] = _iadd(new[d], _imul(c, shift))
        byy = new
    return [RationalPolynomial(c * (-1) ** k for c in byy[m - k]) for k in range(m + 1)]


def _step(m: int) -> list:
    polys = [[1]]
    for mm in range(1, m + 1):
        lin = [-mm, 1]
        polys = [
            _iadd(polys[k] if k < len(polys) else [], _imul(polys[k - 1], lin) if k >= 1 else [])
            for k in range(mm + 1)
        ]
    return [RationalPolynomial(c) for c in polys]


def _newton(m: int) -> list:
    # p_r(x) = sum_{s=1}^m (s - x)^r, expanded binomially
    isums = [sum(s**e for s in range(1, m + 1)) for e in range(m + 1)]
    psums = [None]
    for r in range(1, m + 1):
        psums.append([(-1) ** i * math.comb(r, i) * isums[r - i] for i in range(r + 1)])
    polys = [[1]]
    for k in range(1, m + 1):
        acc = []
        for r in range(1, k + 1):
            acc = _iadd(acc, _imul(psums[r], polys[k - r]))
        quotient = []
        for c in acc:
            q, rem = divmod(-c, k)
            assert rem == 0, "Newton step must divide exactly"
            quotient.append(q)
        polys.append(quotient)
    return [RationalPolynomial(c) for c in polys]


_BUILDERS = {
    Method.EXPLICIT: _explicit,
    Method.PRODUCT: _product,
    Method.STEP: _step,
    Method.NEWTON: _newton,
}


@lru_cache(maxsize=256)
def p_family(m: int, method: Method | str = Method.EXPLICIT) -> PFamily:
    method = Method(method)
    if m < 0:
        raise DomainError("m must be nonnegative")
    bound = NEWTON_BOUND if method is Method.NEWTON else FAMILY_BOUND
    if m > bound:
        raise CapacityError(f"p_family(m={m}, {method.value}) exceeds bound {bound}")
    return PFamily(m, tuple(_BUILDERS[method](m)), method)


def p_poly(k: int, m: int) -> RationalPolynomial:
    if not 0 <= k <= m:
        raise DomainError(f"P_k(m, x) needs 0 <= k <= m, got k={k}, m={m}")
    return p_family(m)[k]


def p_eval(k: int, m: int, x) -> Fraction:
    """Exact value of P_k(m, x) at a rational x.

    Computed as e_k(x-1, ..., x-m) when the family is not cached, which is
    O(m k) and avoids building every polynomial for large m.
    """
    if not 0 <= k <= m:
        raise DomainError(f"P_k(m, x) needs 0 <= k <= m, got k={k}, m={m}")
    x = Fraction(x)
    if m <= 60:
        return p_poly(k, m)(x)
    return elementary_symmetric([x - r for r in range(1, m + 1)], k)


@lru_cache(maxsize=1024)
def _p_values_cached(m: int, x: Fraction) -> tuple:
    # e_k of the integers q(x - r), with x = p/q, then divide by q^k once
    p, q = x.numerator, x.denominator
    e = [1] + [0] * m
    for r in range(1, m + 1):
        v = p - r * q
        for i in range(r, 0, -1):
            e[i] += v * e[i - 1]
    return tuple(Fraction(ek, q**k) for k, ek in enumerate(e))


def p_values(m: int, x) -> list:
    """[P_0(m,x), ..., P_m(m,x)] at one rational point, from the product expansion."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    return list(_p_values_cached(m, Fraction(x)))


# --------------------------------------------------------------------------- #
# Gamma-polygamma representation


def near_diagonal_gamma(M: int, s: int, x, ctx: PrecisionContext, route: str = "partition") -> HPReal:
    """P_{M-s}(M, x) from gamma and polygamma values.

    ``route="esym"`` uses Gamma(x)/Gamma(x-M) * e_s(1/(x-1), ..., 1/(x-M));
    ``route="partition"`` uses the sum over partitions of s of polygamma
    differences weighted by 1/z_mu.  The default computes both and raises
    :class:`PrecisionError` if they disagree beyond the target.
    """
    from . import special_functions as sf

    if M < 1 or not 0 <= s <= M:
        raise DomainError(f"need M >= 1 and 0 <= s <= M, got M={M}, s={s}")
    mp = ctx.mp
    xv = to_mpf(mp, x)
    guard = mp.mpf(10) ** (-(ctx.working_digits // 2))
    for r in range(1, M + 1):
        if abs(xv - r) < guard:
            raise DomainError(f"x is within 10^-{ctx.working_digits // 2} of the pole-cancelling integer {r}")

    ratio = sf.gamma_hp(xv, ctx).value / sf.gamma_hp(xv - M, ctx).value

    def esym():
        return ratio * elementary_symmetric([1 / (xv - r) for r in range(1, M + 1)], s)

    def partition_sum():
        # Near a negative pole psi_nu is about nu!/dist^(nu+1) while the
        # difference psi_nu(x) - psi_nu(x-M) stays moderate; pad for that loss.
        dist = min(abs(v - mp.nint(v)) for v in (xv, xv - M))
        big = max(math.lgamma(s) - s * math.log(float(dist)), 0.0) if s else 0.0
        pctx = ctx.padded(math.ceil(big / math.log(10)) + 2)
        # form both arguments at the padded precision: psi_nu is steep there
        xp = to_mpf(pctx.mp, x)
        xq = xp - M
        diffs = {}
        total = mp.zero
        for mu in partitions(s):
            term = mp.one / mu.z_mu
            for j, mult in mu.multiplicities:
                if j not in diffs:
                    d = sf.polygamma(j - 1, xp, pctx).value - sf.polygamma(j - 1, xq, pctx).value
                    diffs[j] = mp.convert(d) / math.factorial(j - 1)
                term *= diffs[j] ** mult
            total += term
        return ratio * total

    if route == "esym":
        return _wrap(esym(), ctx)
    if route == "partition":
        a, b = partition_sum(), esym()
        scale = max(abs(a), abs(b), mp.one)
        if abs(a - b) > ctx.eps * scale:
            raise PrecisionError("gamma-polygamma routes disagree", estimate=a)
        return _wrap(a, ctx)
    raise DomainError(f"unknown route {route!r}")


def _wrap(v, ctx):
    mp = ctx.mp
    scale = max(abs(v), mp.one)
    return HPReal(v, -ctx.target_digits + (int(mp.floor(mp.log10(scale))) if scale > 1 else 0))


# --------------------------------------------------------------------------- #
# cosh and pi approximants


def cosh_approximant(M: int, x, ctx: PrecisionContext, route: str = "product") -> HPReal:
    """prod_{r=1}^M (1 + 4x^2/(2r-1)^2), or the same via the even P-coefficients at M + 1/2."""
    if M < 1:
        raise DomainError("M must be >= 1")
    mp = ctx.mp
    xv = to_mpf(mp, x)
    if route == "product":
        acc = mp.one
        x2 = 4 * xv * xv
        for r in range(1, M + 1):
            acc *= 1 + x2 / (2 * r - 1) ** 2
        return HPReal(acc, -ctx.target_digits + max(0, int(mp.log10(acc))))
    if route == "ratio":
        vals = p_values(2 * M, Fraction(2 * M + 1, 2))
        denom = vals[2 * M]
        acc = mp.zero
        for k in range(M + 1):
            # (ix)^(2M-2k) = (-1)^(M-k) x^(2M-2k)
            c = vals[2 * k] / denom * (-1) ** (M - k)
            acc += to_mpf(mp, c) * xv ** (2 * M - 2 * k)
        return HPReal(acc, -ctx.target_digits + max(0, int(mp.log10(abs(acc)))))
    raise DomainError(f"unknown route {route!r}")


def _binary_split_sum(terms):
    """Exact sum of Fractions without per-step gcd; (num, den) pairs by bisection."""

    def rec(lo, hi):
        if hi - lo == 1:
            t = terms[lo]
            return t.numerator, t.denominator
        mid = (lo + hi) // 2
        a, b = rec(lo, mid)
        c, d = rec(mid, hi)
        return a * d + c * b, b * d

    if not terms:
        return Fraction(0)
    n, d = rec(0, len(terms))
    return Fraction(n, d)


def pi_ratio_exact(M: int, s: int) -> Fraction:
    """(-1)^s P_{2M-2s}(2M, M+1/2) / P_{2M}(2M, M+1/2), exactly.

    The ratio equals e_{2s} of the reciprocals 1/(M+1/2-r), r=1..2M, which come
    in +- pairs, so only even power sums are needed.
    """
    if s < 1 or M < s:
        raise DomainError(f"pi approximant needs 1 <= s <= M, got M={M}, s={s}")
    if 2 * M <= 60:
        x0 = Fraction(2 * M + 1, 2)
        return (-1) ** s * p_eval(2 * M - 2 * s, 2 * M, x0) / p_eval(2 * M, 2 * M, x0)
    power = [Fraction(0)] * (2 * s)
    for q in range(1, s + 1):
        # reciprocals are +-2/(2r-1), r=1..M; odd power sums vanish
        power[2 * q - 1] = 2 * _binary_split_sum([Fraction(2 ** (2 * q), (2 * r - 1) ** (2 * q)) for r in range(1, M + 1)])
    return (-1) ** s * e_from_p(power, 2 * s)


def pi_approximant(M: int, s: int, ctx: PrecisionContext) -> HPReal:
    """Finite-M approximant to pi^(2s)/(2s)!."""
    r = pi_ratio_exact(M, s)
    return HPReal.exact(r, ctx)


def pi_sqrt_approximant(M: int, ctx: PrecisionContext) -> HPReal:
    """sqrt(-2 P_{2M-2}/P_{2M}) at (2M, M+1/2); tends to pi."""
    r = pi_ratio_exact(M, 1)
    if r <= 0:
        raise DomainError("radicand must be positive")
    mp = ctx.mp
    return HPReal.exact(mp.sqrt(to_mpf(mp, 2 * r)), ctx)


# --------------------------------------------------------------------------- #
# Cycle-number consequences


def cycle_cancellation(n: int, h: int) -> int:
    """Left-hand side of the odd-h weighted cancellation among [n, n-h..n]; always 0."""
    if h % 2 == 0:
        raise DomainError(f"h must be odd, got {h}")
    if not 1 <= h <= n - 1:
        raise DomainError(f"need 1 <= h <= n-1, got n={n}, h={h}")
    return sum(
        (-1) ** r * 2 ** (h - r) * n**r * binomial(n + r - h - 1, n - h - 1) * stirling1(n, n - h + r)
        for r in range(h + 1)
    )


def cycle_weighted_transform(M: int, s: int) -> tuple:
    """(lhs, rhs) of the weighted binomial transform of the (M+1)-st cycle row."""
    if M < 1 or not 0 <= s <= M:
        raise DomainError(f"need M >= 1 and 0 <= s <= M, got M={M}, s={s}")
    lhs = sum(
        (-1) ** (M - s - r) * (M + 1) ** r * binomial(r + s, s) * stirling1(M + 1, r + s + 1)
        for r in range(M - s + 1)
    )
    return lhs, stirling1(M + 1, s + 1)


def cycle_weighted_transform_shifted(M: int, s: int) -> tuple:
    """The same identity after j = r+s, scaled by (-1)^M (M+1)^s."""
    if M < 1 or not 0 <= s <= M:
        raise DomainError(f"need M >= 1 and 0 <= s <= M, got M={M}, s={s}")
    lhs = sum((-1) ** j * (M + 1) ** j * binomial(j, s) * stirling1(M + 1, j + 1) for j in range(M + 1))
    return lhs, (-1) ** M * (M + 1) ** s * stirling1(M + 1, s + 1)


def rbar_poly(m: int, i: int) -> RationalPolynomial:
    """Second r-Stirling polynomial: sum_j C(i+j, i) [m+1, i+j+1] x^j."""
    if not 0 <= i <= m:
        raise DomainError(f"need 0 <= i <= m, got m={m}, i={i}")
    return RationalPolynomial(binomial(i + j, i) * stirling1(m + 1, i + j + 1) for j in range(m - i + 1))


def p_r_stirling_bridge(k: int, m: int, r: int) -> tuple:
    """(P_k(m, -r), (-1)^k [m+r+1, m-k+r+1]_{r+1}); the components agree."""
    if not 0 <= k <= m:
        raise DomainError(f"need 0 <= k <= m, got k={k}, m={m}")
    if r < 0:
        raise DomainError("r must be nonnegative")
    lhs = p_eval(k, m, -r)
    assert lhs.denominator == 1
    return lhs.numerator, (-1) ** k * r_stirling1(m + r + 1, m - k + r + 1, r + 1)
