"""Closed forms for the Malmsten sequence M_n(a,b), the chi_j sequence F_j, the
derived lambda_n and delta_n, and the equal-period Barnes zeta function.

Every rational coefficient (the P-values, powers of 2 and factorials) is
formed exactly and only meets floating point at the final multiply.  The
alternating sums lose digits roughly in proportion to the size of their
largest term, so each assembly first probes term magnitudes at low precision
and then evaluates with that many digits of cancellation padding.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import special_functions as sf
from .combinatorics import binomial
from .core import (
    CapacityError,
    DomainError,
    HPReal,
    PrecisionContext,
    PrecisionError,
    RationalPolynomial,
    _log10_abs,
    make_context,
    to_mpf,
)
from .stirling_poly import p_eval, p_poly, p_values

PROBE_DIGITS = 8
MAX_PAD_ROUNDS = 3
DIRECT_SUM_CAP = 2**20


@dataclass(frozen=True)
class ClosedFormReport:
    """A closed-form value with its per-summand breakdown."""

    value: HPReal
    terms: tuple = ()
    pole_limit_used: bool = False
    pole_terms: tuple = field(default=())

    def __float__(self):
        return float(self.value.value)


@dataclass(frozen=True)
class _Term:
    label: str
    coeff: Fraction  # exact rational prefactor
    factor: Callable  # ctx -> HPReal, or None for a bare rational term


def _as_fraction(v, name: str) -> Fraction:
    if isinstance(v, HPReal):
        raise TypeError
    try:
        f = Fraction(v) if not isinstance(v, str) else Fraction(v.strip())
    except (TypeError, ValueError):
        raise TypeError from None
    if f <= 0:
        raise DomainError(f"{name} must be positive, got {v}")
    return f


def _positive_real(v, name: str):
    """Exact Fraction when possible, otherwise the raw real; rejects v <= 0."""
    try:
        return _as_fraction(v, name)
    except TypeError:
        raw = v.value if isinstance(v, HPReal) else v
        if not raw > 0:
            raise DomainError(f"{name} must be positive, got {raw}") from None
        return raw


def _evaluate(terms, ctx: PrecisionContext) -> list:
    out = []
    for t in terms:
        if t.factor is None:
            out.append((t.label, HPReal.exact(t.coeff, ctx)))
        else:
            out.append((t.label, t.factor(ctx) * t.coeff))
    return out


def _assemble(terms, ctx: PrecisionContext, flags=(), force_pad=None) -> ClosedFormReport:
    """Sum exact-coefficient terms to ``ctx.target_digits`` absolute accuracy."""
    if not terms:
        return ClosedFormReport(HPReal(ctx.mp.zero, -ctx.working_digits), (), bool(flags), tuple(flags))
    if force_pad is None:
        probe = _evaluate(terms, make_context(PROBE_DIGITS))
        top = max((_log10_abs(v.mp, v.value) for _, v in probe), default=0.0)
        pad = max(0, math.ceil(top)) + 2
    else:
        pad = force_pad
    for _ in range(MAX_PAD_ROUNDS):
        wctx = ctx.padded(pad)
        vals = _evaluate(terms, wctx)
        total = vals[0][1]
        for _, v in vals[1:]:
            total = total + v
        if total.error_exponent <= -ctx.target_digits:
            M = ctx.mp
            value = HPReal(M.convert(total.value), max(total.error_exponent, -ctx.working_digits))
            shown = tuple((lab, HPReal(M.convert(v.value), v.error_exponent)) for lab, v in vals)
            return ClosedFormReport(value, shown, bool(flags), tuple(flags))
        pad += total.error_exponent + ctx.target_digits + 5
    raise PrecisionError(
        f"closed form missed 10^-{ctx.target_digits} after padding by {pad} digits",
        estimate=total,
        error_exponent=total.error_exponent,
    )


def _zpd(s: int, a: Fraction, b: Fraction):
    return lambda c: sf.zeta_prime_diff(s, a, b, c)


def _zd(s: int, a: Fraction, b: Fraction):
    return lambda c: sf.zeta_diff(s, a, b, c)


def _const(name):
    return lambda c: sf.constant(name, c)


# --------------------------------------------------------------------------- #
# Malmsten


def malmsten(n: int, a, b, ctx: PrecisionContext) -> ClosedFormReport:
    """M_n(a, b) = int_0^inf log(a x) sech^n(b x) dx in closed form."""
    if n < 1:
        raise DomainError(f"malmsten needs n >= 1, got {n}")
    a = _positive_real(a, "a")
    b = _positive_real(b, "b")
    fa, fb = isinstance(a, Fraction), isinstance(b, Fraction)

    def inv_b(c):
        return HPReal.exact(1 / b, c) if fb else _real(c, 1 / to_mpf(c.mp, b))

    def log_term(c):
        M = c.mp
        g = sf.gamma_hp(Fraction(n, 2), c)
        ratio = to_mpf(M, a / b) if fa and fb else to_mpf(M, a) / to_mpf(M, b)
        lg = _real(c, M.log(ratio))
        return g * g * lg * inv_b(c)

    lead = Fraction(2**n, 4 * math.factorial(n - 1))
    terms = [_Term("log(a/b)", lead, log_term)]

    pref = Fraction(2 ** (2 * n - 1), math.factorial(n - 1))
    u, v = Fraction(n, 4), Fraction(n + 2, 4)
    flags = []
    for k in range(2, n + 2):
        idx = k - 2
        if idx % 2 == 1:
            continue  # P_{odd}(n-1, n/2) = 0: dropped before evaluation
        c = pref * Fraction(-1, 2) ** k * p_eval(idx, n - 1, Fraction(n, 2))
        if c == 0:
            continue
        s = k - n
        if s == 1:
            flags.append(("k", k))

        def bracket(cx, s=s):
            g4 = sf.constant("euler_gamma", cx) + _real(cx, 2 * cx.mp.ln2)
            return (sf.zeta_prime_diff(s, u, v, cx) - g4 * sf.zeta_diff(s, u, v, cx)) * inv_b(cx)

        terms.append(_Term(f"k={k}", c, bracket))
    return _assemble(terms, ctx, flags)


def _real(c: PrecisionContext, v) -> HPReal:
    """Wrap a value computed by a library routine in context ``c``."""
    M = c.mp
    v = M.convert(v)
    return HPReal(v, (math.floor(_log10_abs(M, v)) if v else 0) - c.working_digits + 2)


# --------------------------------------------------------------------------- #
# F_j, lambda_n, delta_n

_FSEQ_CACHE: dict = {}
_FSEQ_LOCK = threading.Lock()


def _fseq_terms(j: int):
    terms = [_Term("-4G/pi", Fraction(-4), lambda c: sf.constant("catalan_G", c) * _inv_pi(c))]
    a1 = Fraction(2 ** (2 * j - 3) * j * j, math.factorial(j - 1))
    u1, v1 = Fraction(j, 4), Fraction(j + 2, 4)
    first = p_values(j - 1, Fraction(j, 2))
    for m in range(j):
        if m % 2:
            continue
        c = a1 * Fraction(-1, 2) ** m * first[m]
        if c:
            terms.append(_Term(f"first m={m}", c, _zpd(m - j + 2, u1, v1)))
    a2 = -Fraction(2 ** (2 * j + 1), math.factorial(j - 1))
    u2, v2 = Fraction(j + 2, 4), Fraction(j + 4, 4)
    second = p_values(j + 1, Fraction(j + 2, 2))
    for m in range(j + 2):
        if m % 2:
            continue
        c = a2 * Fraction(-1, 2) ** m * second[m]
        if c:
            terms.append(_Term(f"second m={m}", c, _zpd(m - j, u2, v2)))
    return terms


def _inv_pi(c: PrecisionContext) -> HPReal:
    pi = sf.constant("pi", c)
    return HPReal(1 / pi.value, pi.error_exponent + 1)


def f_seq(j: int, ctx: PrecisionContext) -> ClosedFormReport:
    """Closed form F_j of chi_j = int_0^inf (sech x - sech^j x)/x^2 dx.

    The zeta'-difference hits s = 1 at m = j-1 in the first sum and m = j+1
    in the second; those indices are always reported in ``pole_terms`` even
    when their P-coefficient vanishes.
    """
    if not isinstance(j, int) or j < 1:
        raise DomainError(f"f_seq needs an integer j >= 1, got {j!r}")
    if j == 1:
        M = ctx.mp
        return ClosedFormReport(HPReal(M.zero, -ctx.working_digits), (("F_1", HPReal(M.zero, -ctx.working_digits)),))
    key = (j, ctx.target_digits)
    with _FSEQ_LOCK:
        hit = _FSEQ_CACHE.get(key)
    if hit is not None and hit.value.mp is ctx.mp:
        return hit
    flags = (("first", j - 1), ("second", j + 1))
    rep = _assemble(_fseq_terms(j), ctx, flags)
    with _FSEQ_LOCK:
        _FSEQ_CACHE[key] = rep
    return rep


def lambda_seq(n: int, ctx: PrecisionContext) -> HPReal:
    """lambda_n = int_0^inf tanh x sech^n x / x dx = (F_n + 4G/pi) / n."""
    if n < 1:
        raise DomainError("lambda_seq needs n >= 1")
    lam1 = sf.constant("catalan_G", ctx) * _inv_pi(ctx) * 4
    return (f_seq(n, ctx).value + lam1) / n


def delta_seq(n: int, ctx: PrecisionContext) -> HPReal:
    """delta_n = int_0^inf (1 - sech x) sech^n x / x^2 dx = F_{n+1} - F_n."""
    if n < 1:
        raise DomainError("delta_seq needs n >= 1")
    return f_seq(n + 1, ctx).value - f_seq(n, ctx).value


# --------------------------------------------------------------------------- #
# Barnes zeta


def adamchik_coefficients(n: int) -> list:
    """Polynomials Q_j(x), j = 0..n-1, with zeta_n(s,x) = sum_j Q_j(x) zeta(s-j, x) / (n-1)!.

    Q_j(x) = (-1)^{n-1-j} P_{n-1-j}(n-1, x).
    """
    if n < 1:
        raise DomainError("Barnes order n must be >= 1")
    m = n - 1
    return [p_poly(m - j, m) * ((-1) ** (m - j)) for j in range(n)]


def _poly_at(p: RationalPolynomial, x, M):
    if isinstance(x, Fraction):
        return to_mpf(M, p(x))
    return p(to_mpf(M, x))


def barnes_zeta(n: int, s, x, ctx: PrecisionContext) -> HPReal:
    """Equal-period Barnes zeta sum_{k in N^n} (k_1+...+k_n+x)^{-s} via the finite reduction."""
    if n < 1:
        raise DomainError("Barnes order n must be >= 1")
    x = _positive_real(x, "x")
    M = ctx.mp
    sv = to_mpf(M, s.value if isinstance(s, HPReal) else (Fraction(s) if isinstance(s, str) else s))
    guard = M.mpf(10) ** (-(ctx.working_digits // 2))
    for p in range(1, n + 1):
        if abs(sv - p) <= guard:
            raise DomainError(f"s is within {M.nstr(guard, 3)} of the pole s={p}; use barnes_residue")
    total = None
    for j, q in enumerate(adamchik_coefficients(n)):
        if q.is_zero():
            continue
        term = sf.hurwitz_zeta(sv - j, x, ctx) * _real_exact(ctx, q, x)
        total = term if total is None else total + term
    return total / math.factorial(n - 1)


def _real_exact(ctx, q: RationalPolynomial, x) -> HPReal:
    if isinstance(x, Fraction):
        return HPReal.exact(q(x), ctx)
    return _real(ctx, _poly_at(q, x, ctx.mp))


@dataclass(frozen=True)
class DirectSumReport:
    value: HPReal
    terms: int
    tail_bound_exponent: int


def barnes_direct_sum(n: int, s, x, ctx: PrecisionContext, tail: str = "bound") -> DirectSumReport:
    """Direct multiple sum grouped by total degree K, weights C(K+n-1, n-1).

    ``tail="bound"`` truncates once the integral-comparison bound on the
    remainder drops below 10^-(target+3) and charges that bound to the result
    (requires s > n).  ``tail="euler_maclaurin"`` sums a moderate head and
    adds an Euler-Maclaurin estimate of the remainder built from numerical
    quadrature and numerical derivatives of the summand.
    """
    if n < 1:
        raise DomainError("Barnes order n must be >= 1")
    x = _positive_real(x, "x")
    M = ctx.mp
    sv = to_mpf(M, Fraction(s) if isinstance(s, str) else s)
    xv = to_mpf(M, x)
    if not sv > n:
        raise DomainError(f"the direct sum converges only for s > n = {n}")
    fact = math.factorial(n - 1)

    def summand(K):
        return binomial(K + n - 1, n - 1) * (K + xv) ** (-sv)

    if tail == "bound":
        target = -(ctx.target_digits + 3)
        sigma = float(sv)

        def log_bound(K0):
            base = K0 + float(xv)
            lead = (n - 1) * math.log10(1 + (n - 1) / base) - math.log10(fact)
            return lead + math.log10(base ** (-(sigma - n + 1)) + base ** (n - sigma) / (sigma - n))

        K0 = 16
        while log_bound(K0) > target:
            K0 *= 2
            if K0 > DIRECT_SUM_CAP:
                raise CapacityError(
                    f"direct sum would need more than {DIRECT_SUM_CAP} terms at s={s}, n={n}; "
                    "use tail='euler_maclaurin'"
                )
        lo, hi = K0 // 2, K0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if log_bound(mid) > target:
                lo = mid
            else:
                hi = mid
        K0 = hi
        acc = M.fsum(summand(K) for K in range(K0))
        bound = log_bound(K0)
        e = math.ceil(max(bound, _log10_abs(M, acc) - ctx.working_digits + math.log10(K0)))
        return DirectSumReport(HPReal(acc, e), K0, math.ceil(bound))
    if tail == "euler_maclaurin":
        K0 = max(200, 4 * ctx.working_digits)
        acc = M.fsum(summand(K) for K in range(K0))
        g = lambda t: M.binomial(t + n - 1, n - 1) * (t + xv) ** (-sv)
        rem = M.quad(g, [K0, 2 * K0, 8 * K0, M.inf]) + g(K0) / 2
        order = 0
        last = None
        for i in range(1, 40):
            d = M.diff(g, K0, 2 * i - 1)
            term = -M.bernoulli(2 * i) / M.factorial(2 * i) * d
            if last is not None and abs(term) > abs(last):
                break
            rem += term
            last = term
            order = i
            if abs(term) < M.mpf(10) ** (-(ctx.working_digits + 2)):
                break
        e = math.ceil(_log10_abs(M, last) if last else -ctx.working_digits) + 1
        e = max(e, math.ceil(_log10_abs(M, acc)) - ctx.working_digits + 3)
        return DirectSumReport(HPReal(acc + rem, e), K0 + order, e)
    raise DomainError(f"unknown tail strategy {tail!r}")


def barnes_residue(m: int, k: int, x) -> Fraction:
    """Residue of zeta_{m+1}(s, x) at s = m+1-k: (-1)^k P_k(m, x) / m!."""
    if not 0 <= k <= m:
        raise DomainError(f"residue index needs 0 <= k <= m, got k={k}, m={m}")
    return Fraction((-1) ** k) * p_eval(k, m, Fraction(x)) / math.factorial(m)


def barnes_residue_poly(m: int, k: int) -> RationalPolynomial:
    if not 0 <= k <= m:
        raise DomainError(f"residue index needs 0 <= k <= m, got k={k}, m={m}")
    return p_poly(k, m) * Fraction((-1) ** k, math.factorial(m))


def barnes_residue_numeric(m: int, k: int, x, ctx: PrecisionContext, max_levels: int = 60) -> HPReal:
    """Residue at s = m+1-k by Richardson extrapolation of h * zeta_{m+1}(p+h, x).

    The symmetric part [g(h) + g(-h)]/2 of g(h) = h zeta_{m+1}(p+h, x) is even
    in h with constant term equal to the residue, so extrapolation runs in h^2.
    Levels are added until two successive diagonal entries agree to the target.
    """
    if not 0 <= k <= m:
        raise DomainError(f"residue index needs 0 <= k <= m, got k={k}, m={m}")
    p = m + 1 - k
    # each Richardson column amplifies rounding by a bounded factor; pad for it
    inner = ctx.padded(ctx.target_digits // 4 + 5)
    M = inner.mp
    h0 = M.mpf(1) / 8
    tol = M.mpf(10) ** (-(ctx.target_digits + 2))
    rows = []
    diff = None
    for i in range(max_levels):
        h = h0 / 2**i
        gp = barnes_zeta(m + 1, p + h, x, inner)
        gm = barnes_zeta(m + 1, p - h, x, inner)
        row = [(gp.value - gm.value) * h / 2]
        for col in range(1, i + 1):
            f = M.mpf(4) ** col
            row.append((f * row[col - 1] - rows[-1][col - 1]) / (f - 1))
        if rows:
            diff = abs(row[-1] - rows[-1][-1])
            if diff <= tol and i >= 3:
                rows.append(row)
                break
        rows.append(row)
    best = rows[-1][-1]
    e = math.ceil(_log10_abs(M, diff)) if diff else -ctx.working_digits
    return HPReal(ctx.mp.convert(best), max(e, -ctx.working_digits))
