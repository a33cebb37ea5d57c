"""Arbitrary-precision gamma, polygamma, Hurwitz zeta (with s-derivative),
Dirichlet beta, Stieltjes gamma_1 and pole-cancelled zeta differences.

Hurwitz zeta is evaluated by Euler-Maclaurin summation

    zeta(s, a) = sum_{k<N} (k+a)^-s + A^(1-s)/(s-1) + A^-s/2
                 + sum_{j=1}^J B_2j/(2j)! (s)_{2j-1} A^(1-s-2j) + R,   A = N+a,

with the s-derivative carried along term by term.  N, J and the working
precision are chosen from (s, a, digits); the remainder bound is folded into
the returned error exponent.  Differences zeta'(s,a) - zeta'(s,b) combine the
two A^(1-s)/(s-1) terms analytically, so s = 1 needs no limiting process.
"""

from __future__ import annotations

import enum
import math
import threading
from functools import lru_cache

from .core import DomainError, HPReal, PrecisionContext, PrecisionError, mp_context, to_mpf

POLYGAMMA_BOUND = 200


class ConstantName(str, enum.Enum):
    PI = "pi"
    EULER_GAMMA = "euler_gamma"
    CATALAN_G = "catalan_G"
    LOG2 = "log2"


# --------------------------------------------------------------------------- #
# Euler-Maclaurin machinery


_BERN: dict = {}
_BERN_LOCK = threading.Lock()


def _bernoulli_over_factorial(dps: int, jmax: int) -> list:
    """[None, B_2/2!, B_4/4!, ...] up to index jmax, grown on demand per precision."""
    with _BERN_LOCK:
        table = _BERN.setdefault(dps, [None])
        if len(table) <= jmax:
            mp = mp_context(dps)
            for j in range(len(table), jmax + 1):
                p, q = mp.bernfrac(2 * j)
                table.append(mp.mpf(p) / (q * math.factorial(2 * j)))
        return table


@lru_cache(maxsize=512)
def _head_table(dps: int, a, N: int) -> tuple:
    """(k+a, log(k+a)) for k < N, shared by every s at this (a, N, precision)."""
    mp = mp_context(dps)
    a = mp.convert(a)
    return tuple((a + k, mp.log(a + k)) for k in range(N))


def _plan(s, a, digits: int, grow: int = 0):
    """Pick (N, working dps) for target ``digits`` at real s and shift a."""
    sig = float(s)
    af = float(a)
    A = max(10.0, 0.45 * digits + 0.5 * abs(sig) + 5.0) * (1.5**grow)
    N = max(0, math.ceil(A - af))
    A = N + af
    pad = 5
    if sig < 1:
        # positive head terms of size A^(1-s) cancel against the pole term
        pad += math.ceil((1 - sig) * math.log10(max(A, 2.0))) + 2
    return N, digits + pad


def _em_parts(mp, s, a, N: int, digits: int):
    """Euler-Maclaurin pieces at one (s, a): returns dict of (value, derivative) pairs.

    Keys: head, half, tail, plus A, logA, head_mag (largest head partial sum,
    which sets the rounding scale) and absolute remainder bounds tail_bound_v
    and tail_bound_d for the value and the s-derivative.
    """
    s = mp.convert(s)
    a = mp.convert(a)
    s_int = s == int(s) and abs(s) < 10**6
    table = _head_table(mp.dps, a, N)
    hv = mp.zero
    hd = mp.zero
    for base, lg in table:
        t = base ** (-int(s)) if s_int else mp.exp(-s * lg)
        hv += t
        hd -= lg * t
    A = a + N
    L = mp.log(A)
    Ams = A ** (-int(s)) if s_int else mp.exp(-s * L)
    half = (Ams / 2, -L * Ams / 2)

    # Bernoulli tail; poch = (s)_{2j-1}, dpoch its s-derivative
    sigma = float(s)
    # the remainder bound only applies once sigma + 2j - 1 > 0
    jmax = max(10, digits) + max(0, math.ceil((1 - sigma) / 2))
    bern = _bernoulli_over_factorial(mp.dps, jmax)
    poch, dpoch = s, mp.one
    powA = Ams / A  # A^(-s-1)
    inv_A2 = 1 / (A * A)
    tv = mp.zero
    td = mp.zero
    # Absolute tolerance: for sigma < 1 the head and pole term cancel heavily,
    # so their size says nothing about the size of the result.
    tol = mp.mpf(10) ** (-digits)
    A1s = A * Ams  # A^(1-s)
    inv_2piA2 = 1 / (2 * mp.pi * A) ** 2
    rfac = mp.one
    bound = None
    best = None
    for j in range(1, jmax + 1):
        c = bern[j]
        term_v = c * poch * powA
        term_d = c * (dpoch - L * poch) * powA
        tv += term_v
        td += term_d
        # advance (s)_{2j-1} -> (s)_{2j+1}
        for i in (2 * j - 1, 2 * j):
            dpoch = dpoch * (s + i) + poch
            poch = poch * (s + i)
        powA *= inv_A2
        rfac *= inv_2piA2
        # remainder after j Bernoulli terms: 4|(s)_{2j}| / (2 pi A)^{2j} A^{1-sigma} / (sigma + 2j - 1)
        if sigma + 2 * j - 1 > 0:
            p2j = abs(poch / (s + 2 * j))  # (s)_{2j}
            dp2j = abs(dpoch) + abs(poch)
            common = 4 * rfac * abs(A1s) / (sigma + 2 * j - 1)
            rv, rd = common * p2j, common * dp2j * (1 + L)
            r = max(rv, rd)
            if best is None or r < max(best):
                best = (rv, rd)
            if r <= tol:
                bound = (rv, rd)
                break
            if r > 1e6 * max(best):
                break
    if bound is None and best is not None:
        # accept relative bounds once the magnitudes of the results are known
        pv, pd = _pole_term(mp, s, A, L) if s != 1 else (mp.zero, mp.zero)
        v = hv + pv + half[0] + tv
        d = hd + pd + half[1] + td
        if best[0] <= tol * max(abs(v), mp.one) and best[1] <= tol * max(abs(d), mp.one):
            bound = best
    bv, bd = bound if bound is not None else (best or (mp.inf, mp.inf))
    return {
        "head": (hv, hd),
        "half": half,
        "tail": (tv, td),
        "A": A,
        "logA": L,
        "head_mag": max(abs(hv), abs(hd)),
        "tail_bound_v": bv,
        "tail_bound_d": bd,
        "converged": bound is not None,
    }


def _pole_term(mp, s, A, L):
    """A^(1-s)/(s-1) and its s-derivative; s != 1."""
    w = A ** (1 - s) if s != int(s) else A ** (1 - int(s))
    v = w / (s - 1)
    d = -L * w / (s - 1) - w / (s - 1) ** 2
    return v, d


def _pole_term_diff(mp, s, A, B, LA, LB):
    """[A^(1-s) - B^(1-s)]/(s-1) and its s-derivative, finite at s = 1."""
    t = 1 - s
    dl = LA - LB
    if abs(t * dl) < mp.mpf("0.5") and abs(t) < 1:
        # q(t) = expm1(t dl)/t = sum_n dl^(n+1) t^n/(n+1)!,  q'(t) = sum_n n u_n / t
        if t == 0:
            q, dq = dl, dl * dl / 2
        else:
            q = dq = mp.zero
            u = dl
            eps = mp.mpf(2) ** (-mp.prec - 10)
            n = 0
            while True:
                q += u
                dq += n * u / t
                if n > 2 and abs(u) < eps * abs(q):
                    break
                n += 1
                u = u * t * dl / (n + 1)
        Bt = mp.exp(t * LB)
        return -Bt * q, Bt * (LB * q + dq)
    va, da = _pole_term(mp, s, mp.exp(LA), LA)
    vb, db = _pole_term(mp, s, mp.exp(LB), LB)
    return va - vb, da - db


def _check_shift(a, name="a"):
    if a <= 0:
        raise DomainError(f"shift {name} must be positive, got {a}")


def _hurwitz_pair(s, a, ctx: PrecisionContext, grow: int = 0):
    """(zeta, zeta', value error exponent, derivative error exponent) at s != 1, a > 0."""
    digits = ctx.working_digits
    for attempt in range(grow, grow + 4):
        N, dps = _plan(s, a, digits, attempt)
        mp = mp_context(dps)
        sv, av = mp.convert(s), mp.convert(a)
        parts = _em_parts(mp, sv, av, N, digits)
        if not parts["converged"]:
            continue
        pv, pd = _pole_term(mp, sv, parts["A"], parts["logA"])
        v = parts["head"][0] + pv + parts["half"][0] + parts["tail"][0]
        d = parts["head"][1] + pd + parts["half"][1] + parts["tail"][1]
        hm = parts["head_mag"]
        return (v, d, _error_exponent(mp, parts["tail_bound_v"], abs(v), digits, hm),
                _error_exponent(mp, parts["tail_bound_d"], abs(d), digits, hm))
    raise PrecisionError(f"Euler-Maclaurin did not converge at s={s}, a={a}")


def _error_exponent(mp, tail_bound, magnitude, digits, head_mag=0) -> int:
    # the working precision mp.dps already carries padding for the head/pole
    # cancellation, so the head only contributes at that finer scale
    rounding = max(magnitude, mp.one) * mp.mpf(10) ** (-digits) + 100 * head_mag * mp.eps
    total = tail_bound + rounding
    return math.ceil(float(mp.log10(total)))


def _pole_guard(s, ctx: PrecisionContext, what: str):
    mp = ctx.mp
    if abs(to_mpf(mp, s) - 1) <= mp.mpf(10) ** (-(ctx.working_digits // 2)):
        raise DomainError(f"{what}: s is within 10^-{ctx.working_digits // 2} of the pole s=1; use zeta_diff / zeta_prime_diff")


def hurwitz_zeta(s, a, ctx: PrecisionContext) -> HPReal:
    """zeta(s, a) for real s != 1 and a > 0."""
    mp = ctx.mp
    s, a = to_mpf(mp, s), to_mpf(mp, a)
    _check_shift(a)
    _pole_guard(s, ctx, "hurwitz_zeta")
    v, _, e, _ = _hurwitz_pair(s, a, ctx)
    return HPReal(mp.convert(v), e)


def riemann_zeta(s, ctx: PrecisionContext) -> HPReal:
    return hurwitz_zeta(s, 1, ctx)


def hurwitz_zeta_sderiv(s, a, ctx: PrecisionContext) -> HPReal:
    """d/ds zeta(s, a) for real s != 1 and a > 0."""
    mp = ctx.mp
    s, a = to_mpf(mp, s), to_mpf(mp, a)
    _check_shift(a)
    _pole_guard(s, ctx, "hurwitz_zeta_sderiv")
    _, d, _, e = _hurwitz_pair(s, a, ctx)
    return HPReal(mp.convert(d), e)


def _diff_pair(s, a, b, ctx: PrecisionContext):
    """(zeta(s,a)-zeta(s,b), zeta'(s,a)-zeta'(s,b), and their error exponents), pole-safe."""
    digits = ctx.working_digits
    for attempt in range(4):
        Na, dps_a = _plan(s, a, digits, attempt)
        Nb, dps_b = _plan(s, b, digits, attempt)
        dps = max(dps_a, dps_b)
        mp = mp_context(dps)
        sv, av, bv = mp.convert(s), mp.convert(a), mp.convert(b)
        N = max(Na, Nb)
        pa = _em_parts(mp, sv, av, N, digits)
        pb = _em_parts(mp, sv, bv, N, digits)
        if not (pa["converged"] and pb["converged"]):
            continue
        pv, pd = _pole_term_diff(mp, sv, pa["A"], pb["A"], pa["logA"], pb["logA"])
        v = sum(pa[k][0] - pb[k][0] for k in ("head", "half", "tail")) + pv
        d = sum(pa[k][1] - pb[k][1] for k in ("head", "half", "tail")) + pd
        hm = max(pa["head_mag"], pb["head_mag"])
        return (v, d, _error_exponent(mp, pa["tail_bound_v"] + pb["tail_bound_v"], abs(v), digits, hm),
                _error_exponent(mp, pa["tail_bound_d"] + pb["tail_bound_d"], abs(d), digits, hm))
    raise PrecisionError(f"Euler-Maclaurin did not converge for the difference at s={s}, a={a}, b={b}")


def zeta_diff(s, a, b, ctx: PrecisionContext) -> HPReal:
    """zeta(s,a) - zeta(s,b); at s = 1 this is psi(b) - psi(a)."""
    mp = ctx.mp
    s, a, b = to_mpf(mp, s), to_mpf(mp, a), to_mpf(mp, b)
    _check_shift(a)
    _check_shift(b, "b")
    if a == b:
        return HPReal(mp.zero, -ctx.working_digits)
    v, _, e, _ = _diff_pair(s, a, b, ctx)
    return HPReal(mp.convert(v), e)


def zeta_prime_diff(s, a, b, ctx: PrecisionContext) -> HPReal:
    """zeta'(s,a) - zeta'(s,b), pole-safe; at s = 1 equals -gamma_1(a) + gamma_1(b)."""
    mp = ctx.mp
    s, a, b = to_mpf(mp, s), to_mpf(mp, a), to_mpf(mp, b)
    _check_shift(a)
    _check_shift(b, "b")
    if a == b:
        return HPReal(mp.zero, -ctx.working_digits)
    _, d, _, e = _diff_pair(s, a, b, ctx)
    return HPReal(mp.convert(d), e)


def zeta_batch_diff(s_values, a, b, ctx: PrecisionContext) -> list:
    """[(zeta diff, zeta' diff)] as HPReal pairs for several s at the same shifts."""
    mp = ctx.mp
    out = []
    for s in s_values:
        v, d, ev, ed = _diff_pair(to_mpf(mp, s), to_mpf(mp, a), to_mpf(mp, b), ctx)
        out.append((HPReal(mp.convert(v), ev), HPReal(mp.convert(d), ed)))
    return out


# --------------------------------------------------------------------------- #
# Stieltjes gamma_1


def stieltjes_gamma1(a, ctx: PrecisionContext, method: str = "direct") -> HPReal:
    """First generalized Stieltjes constant gamma_1(a).

    ``direct`` takes the finite part of the Euler-Maclaurin derivative at s=1
    exactly; ``richardson`` extrapolates f(h) = [zeta'(1+h,a) + 1/h^2] symmetrised
    in h, as h -> 0.  Both give -lim_{s->1} (zeta'(s,a) + 1/(s-1)^2).
    """
    mp = ctx.mp
    a = to_mpf(mp, a)
    _check_shift(a)
    if method == "direct":
        digits = ctx.working_digits
        for attempt in range(4):
            N, dps = _plan(1, a, digits, attempt)
            M = mp_context(dps)
            parts = _em_parts(M, M.one, M.convert(a), N, digits)
            if not parts["converged"]:
                continue
            L = parts["logA"]
            finite = parts["head"][1] + parts["half"][1] + parts["tail"][1] + L * L / 2
            e = _error_exponent(M, parts["tail_bound_d"], abs(finite), digits, parts["head_mag"])
            return HPReal(mp.convert(-finite), e)
        raise PrecisionError("Stieltjes gamma_1 did not converge")
    if method == "richardson":
        return _stieltjes_richardson(a, ctx)
    raise DomainError(f"unknown method {method!r}")


def _stieltjes_richardson(a, ctx: PrecisionContext) -> HPReal:
    mp = ctx.mp
    target = mp.mpf(10) ** (-ctx.target_digits)
    extra = 12
    for boost in (extra, 2 * extra, 4 * extra):
        inner = ctx.padded(boost + 10)
        M = inner.mp
        h0 = M.mpf(1) / 4
        table = []
        prev = None
        for i in range(60):
            h = h0 / 2**i
            fp = _hurwitz_pair(1 + h, M.convert(a), inner)[1] + 1 / (h * h)
            fm = _hurwitz_pair(1 - h, M.convert(a), inner)[1] + 1 / (h * h)
            row = [(fp + fm) / 2]
            for k in range(1, i + 1):
                f = 4**k
                row.append((f * row[k - 1] - table[-1][k - 1]) / (f - 1))
            table.append(row)
            est = row[-1]
            if prev is not None and abs(est - prev) < target * max(1, abs(est)) / 100:
                return HPReal(mp.convert(-est), math.ceil(float(M.log10(max(abs(est - prev), target / 100)))))
            prev = est
            if 2 * i * math.log10(2) > boost:
                break
    raise PrecisionError("Richardson extrapolation for gamma_1 did not settle", estimate=-prev)


# --------------------------------------------------------------------------- #
# Gamma family


def _pole_distance_check(x, ctx, what):
    mp = ctx.mp
    if x <= 0:
        n = mp.nint(x)
        if abs(x - n) <= mp.mpf(10) ** (-(ctx.working_digits // 2)):
            raise DomainError(f"{what}: x={mp.nstr(x, 10)} is at the pole {int(n)}")


def gamma_hp(x, ctx: PrecisionContext) -> HPReal:
    mp = ctx.mp
    x = to_mpf(mp, x)
    _pole_distance_check(x, ctx, "gamma")
    v = mp.gamma(x)
    return HPReal(v, -ctx.working_digits + 2 + max(0, int(mp.log10(abs(v)))))


def log_gamma(x, ctx: PrecisionContext) -> HPReal:
    mp = ctx.mp
    x = to_mpf(mp, x)
    if x <= 0:
        raise DomainError("log_gamma is provided for x > 0")
    v = mp.loggamma(x)
    return HPReal(v, -ctx.working_digits + 2 + max(0, int(mp.log10(abs(v) + 1))))


def _digamma_positive(mp, x, digits: int):
    """psi(x) for x > 0: upward recurrence then the asymptotic Bernoulli series."""
    X = max(10, math.ceil(0.45 * digits + 5))
    shift = mp.zero
    while x < X:
        shift += 1 / x
        x += 1
    acc = mp.log(x) - 1 / (2 * x)
    x2 = x * x
    p = x2
    tol = mp.mpf(10) ** (-digits - 5)
    k = 1
    while True:
        num, den = mp.bernfrac(2 * k)
        term = mp.mpf(num) / den / (2 * k * p)
        acc -= term
        if abs(term) < tol or k > 4 * digits:
            break
        p *= x2
        k += 1
    return acc - shift


def polygamma(nu: int, x, ctx: PrecisionContext) -> HPReal:
    """psi_nu(x) for real x off the poles 0, -1, -2, ...

    Positive x is evaluated directly (nu=0 by asymptotics, nu>=1 through
    zeta(nu+1, x)); negative non-integer x is moved to x > 0 with the
    difference recurrence psi_nu(x) = psi_nu(x+1) - (-1)^nu nu! x^(-nu-1).
    """
    if nu < 0 or nu > POLYGAMMA_BOUND:
        raise DomainError(f"polygamma order must lie in [0, {POLYGAMMA_BOUND}]")
    mp = ctx.mp
    x = to_mpf(mp, x)
    _pole_distance_check(x, ctx, "polygamma")
    inner = ctx.padded(5)
    M = inner.mp
    xv = M.convert(x)
    correction = M.zero
    sign = -1 if nu % 2 else 1  # (-1)^nu
    fact = math.factorial(nu)
    while xv <= 0:
        correction -= sign * fact * xv ** (-nu - 1)
        xv += 1
    if nu == 0:
        base = _digamma_positive(M, xv, inner.working_digits)
        e = -ctx.working_digits + 2
    else:
        z, _, e, _ = _hurwitz_pair(nu + 1, xv, inner)
        base = (-1) ** (nu + 1) * fact * z
        e += int(math.log10(fact)) + 1
    v = base + correction
    return HPReal(mp.convert(v), max(e, -ctx.working_digits + 2 + max(0, int(M.log10(abs(v) + 1)))))


def digamma(x, ctx: PrecisionContext) -> HPReal:
    return polygamma(0, x, ctx)


# --------------------------------------------------------------------------- #
# Dirichlet beta and constants


def dirichlet_beta(s, ctx: PrecisionContext) -> HPReal:
    """beta(s) = 4^-s [zeta(s,1/4) - zeta(s,3/4)], valid for all real s."""
    mp = ctx.mp
    s = to_mpf(mp, s)
    d = zeta_diff(s, mp.mpf(1) / 4, mp.mpf(3) / 4, ctx)
    f = mp.mpf(4) ** (-s)
    return HPReal(d.value * f, d.error_exponent + max(0, int(mp.log10(f)) + 1))


_CONST_CACHE: dict = {}
_CONST_LOCK = threading.Lock()


def _arctan_inv(mp, n: int):
    """arctan(1/n) by its Taylor series."""
    x = mp.one / n
    x2 = x * x
    term = x
    acc = mp.zero
    k = 0
    eps = mp.mpf(2) ** (-mp.prec - 5)
    while abs(term) > eps:
        acc += term / (2 * k + 1) if k % 2 == 0 else -term / (2 * k + 1)
        term *= x2
        k += 1
    return acc


def _independent_constant(name: ConstantName, mp, digits: int):
    if name is ConstantName.PI:
        return 16 * _arctan_inv(mp, 5) - 4 * _arctan_inv(mp, 239)
    if name is ConstantName.LOG2:
        # log 2 = sum 1/(k 2^k)
        acc, p, k = mp.zero, mp.mpf(1) / 2, 1
        eps = mp.mpf(2) ** (-mp.prec - 5)
        while p > eps:
            acc += p / k
            p /= 2
            k += 1
        return acc
    if name is ConstantName.EULER_GAMMA:
        return -_digamma_positive(mp, mp.one, digits)
    if name is ConstantName.CATALAN_G:
        # G = pi/8 log(2+sqrt3) + 3/8 sum (n!)^2 / ((2n)! (2n+1)^2)
        acc, c, n = mp.zero, mp.one, 0
        eps = mp.mpf(2) ** (-mp.prec - 5)
        while c > eps:
            acc += c / (2 * n + 1) ** 2
            n += 1
            c = c * n / (2 * (2 * n - 1))
        pi = 16 * _arctan_inv(mp, 5) - 4 * _arctan_inv(mp, 239)
        return pi / 8 * mp.log(2 + mp.sqrt(3)) + 3 * acc / 8
    raise DomainError(f"unknown constant {name}")


def _library_constant(name: ConstantName, mp):
    return {
        ConstantName.PI: mp.pi,
        ConstantName.LOG2: mp.ln2,
        ConstantName.EULER_GAMMA: mp.euler,
        ConstantName.CATALAN_G: mp.catalan,
    }[name]


def constant(name, ctx: PrecisionContext) -> HPReal:
    """pi, Euler's gamma, Catalan's G or log 2, cross-checked by a second algorithm."""
    name = ConstantName(name)
    dps = ctx.working_digits
    key = (name, dps)
    v = _CONST_CACHE.get(key)
    if v is None:
        mp = mp_context(dps + 10)
        lib = +_library_constant(name, mp)
        ind = _independent_constant(name, mp, dps + 10)
        if abs(lib - ind) > mp.mpf(10) ** (-dps):
            raise PrecisionError(f"constant {name.value}: algorithms disagree")
        with _CONST_LOCK:
            v = _CONST_CACHE.setdefault(key, ctx.mp.convert(lib))
    return HPReal(v, -dps + 1)


def constant_crosscheck(name, ctx: PrecisionContext) -> HPReal:
    """The independent series/algorithm used to validate :func:`constant`."""
    name = ConstantName(name)
    mp = mp_context(ctx.working_digits + 10)
    return HPReal(ctx.mp.convert(_independent_constant(name, mp, ctx.working_digits + 10)), -ctx.working_digits + 1)


# --------------------------------------------------------------------------- #
# Closed values at quarter and half shifts


def quarter_gamma_closed_value(ctx: PrecisionContext) -> HPReal:
    """2 pi log(Gamma(3/4) sqrt(2 pi)/Gamma(1/4)) + pi (gamma + log 4)."""
    mp = ctx.mp
    pi = constant(ConstantName.PI, ctx).value
    g = constant(ConstantName.EULER_GAMMA, ctx).value
    v = 2 * pi * mp.log(mp.gamma(mp.mpf(3) / 4) * mp.sqrt(2 * pi) / mp.gamma(mp.mpf(1) / 4)) + pi * (g + mp.log(4))
    return HPReal(v, -ctx.working_digits + 3)


def half_shift_closed_value(m: int, ctx: PrecisionContext) -> HPReal:
    """zeta'(1, m/2) - zeta'(1, (m+1)/2) from digamma values and a finite log sum."""
    if m < 1:
        raise DomainError("m must be >= 1")
    mp = ctx.mp
    ln2 = constant(ConstantName.LOG2, ctx).value
    g = constant(ConstantName.EULER_GAMMA, ctx).value
    sgn = -1 if m % 2 else 1
    v = -ln2 * (digamma(mp.mpf(m) / 2, ctx).value - digamma(mp.mpf(m + 1) / 2, ctx).value)
    v += sgn * (ln2 * ln2 - 2 * g * ln2)
    # the Kronecker-delta guard at m=1 coincides with the empty sum
    v += 2 * sgn * sum(((-1) ** r) * mp.log(r) / r for r in range(1, m))
    return HPReal(v, -ctx.working_digits + 3)
