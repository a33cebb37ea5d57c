"""Multiplicities of chi_j in lower-bounded nested sums, and what they feed.

For lower bounds (l_1, ..., l_N) the nested sum

    sum_{k_N=l_N}^{N} sum_{k_{N-1}=l_{N-1}}^{k_N} ... sum_{k_1=l_1}^{k_2} chi_{k_1}

equals sum_j c_j chi_j, where c_j counts nondecreasing chains
j = k_1 <= k_2 <= ... <= k_N <= N with k_i >= l_i.  Substituting the integral
for chi_j gives a single sech-polynomial integral; substituting F_j gives the
closed-form right-hand side.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import closed_forms as cf
from . import special_functions as sf
from .combinatorics import binomial, catalan
from .core import (
    CapacityError,
    DiagnosticsError,
    DomainError,
    HPReal,
    PrecisionContext,
    RationalPolynomial,
    _log10_abs,
    _log10_sum,
    to_mpf,
)
from .quadrature import IntegrandSpec

COEFF_BOUND = 500
BRUTEFORCE_BOUND = 10
SERIES_JMAX = 200


@dataclass(frozen=True)
class LowerBounds:
    N: int
    bounds: tuple

    def __post_init__(self):
        b = tuple(int(v) for v in self.bounds)
        object.__setattr__(self, "bounds", b)
        if self.N < 1:
            raise DomainError("N must be >= 1")
        if len(b) != self.N:
            raise DomainError(f"expected {self.N} lower bounds, got {len(b)}")
        if any(v < 1 for v in b):
            raise DomainError("lower bounds must be >= 1")

    @classmethod
    def of(cls, bounds: Sequence[int]) -> "LowerBounds":
        return cls(len(bounds), tuple(bounds))

    @classmethod
    def common(cls, N: int, m: int) -> "LowerBounds":
        return cls(N, (m,) * N)

    @classmethod
    def staircase(cls, N: int) -> "LowerBounds":
        return cls(N, tuple(range(1, N + 1)))


@dataclass(frozen=True)
class CoefficientVector:
    N: int
    c: tuple

    @property
    def total(self) -> int:
        return sum(self.c)

    def __iter__(self):
        return iter(self.c)

    def __getitem__(self, j: int) -> int:
        """1-based access: ``v[j]`` is c_j."""
        return self.c[j - 1]

    def normalized(self) -> tuple:
        t = self.total
        if t == 0:
            raise DomainError("cannot normalise the zero vector")
        return tuple(Fraction(v, t) for v in self.c)

    def weight_polynomial(self) -> RationalPolynomial:
        """W(u) = sum_j c_j u^j."""
        return RationalPolynomial([0, *self.c])


# --------------------------------------------------------------------------- #
# Coefficients


def coeffs(lows: LowerBounds) -> CoefficientVector:
    """c_j by the backward completion-count recurrence with suffix sums, O(N^2)."""
    N, l = lows.N, lows.bounds
    if N > COEFF_BOUND:
        raise CapacityError(f"N={N} exceeds the configured bound {COEFF_BOUND}")
    if N == 1:
        return CoefficientVector(1, (1 if l[0] <= 1 else 0,))
    # D[r] for r = 1..N (index 0 unused); start at i = N
    D = [0] + [max(0, N - max(r, l[N - 1]) + 1) for r in range(1, N + 1)]
    for i in range(N - 1, 1, -1):
        suffix = [0] * (N + 2)
        for r in range(N, 0, -1):
            suffix[r] = suffix[r + 1] + D[r]
        li = l[i - 1]
        D = [0] + [suffix[max(r, li)] if max(r, li) <= N else 0 for r in range(1, N + 1)]
    c = tuple(D[j] if j >= l[0] else 0 for j in range(1, N + 1))
    return CoefficientVector(N, c)


def coeffs_bruteforce(lows: LowerBounds) -> CoefficientVector:
    """Enumerate every admissible chain and tally its innermost index."""
    N, l = lows.N, lows.bounds
    if N > BRUTEFORCE_BOUND:
        raise CapacityError(f"brute force limited to N <= {BRUTEFORCE_BOUND}, got {N}")
    c = [0] * N
    for chain in itertools.combinations_with_replacement(range(1, N + 1), N):
        # combinations_with_replacement yields nondecreasing tuples k_1 <= ... <= k_N
        if all(k >= lo for k, lo in zip(chain, l)):
            c[chain[0] - 1] += 1
    return CoefficientVector(N, tuple(c))


@dataclass(frozen=True)
class Family:
    """A named lower-bound family: ``common`` with bound m, or ``staircase``."""

    kind: str
    m: int = 0

    def __post_init__(self):
        if self.kind not in ("common", "staircase"):
            raise DomainError(f"unknown family {self.kind!r}")
        if self.kind == "common" and self.m < 1:
            raise DomainError("common family needs m >= 1")

    def lows(self, N: int) -> LowerBounds:
        return LowerBounds.common(N, self.m) if self.kind == "common" else LowerBounds.staircase(N)


def common(m: int) -> Family:
    return Family("common", m)


STAIRCASE = Family("staircase")


def coeffs_closed(kind: Family, N: int) -> CoefficientVector:
    if N < 1:
        raise DomainError("N must be >= 1")
    if kind.kind == "common":
        m = kind.m
        if not 1 <= m <= N:
            raise DomainError(f"common bound needs 1 <= m <= N, got m={m}, N={N}")
        c = tuple(binomial(2 * N - j - 1, N - j) if j >= m else 0 for j in range(1, N + 1))
    else:
        c = []
        for j in range(1, N + 1):
            q, r = divmod(j * binomial(2 * N - j - 1, N - 1), N)
            assert r == 0
            c.append(q)
        c = tuple(c)
    return CoefficientVector(N, c)


def closed_total(kind: Family, N: int) -> int:
    """Sum of the closed-form vector: C(2N-m, N-m) or the Catalan number C_N."""
    if kind.kind == "common":
        return binomial(2 * N - kind.m, N - kind.m)
    return catalan(N)


# --------------------------------------------------------------------------- #
# Integrand and right-hand side


class IntegrandPolynomial(NamedTuple):
    total: int
    vector: CoefficientVector

    @property
    def small_x_coefficient(self) -> Fraction:
        """Limit of the integrand at x -> 0: sum_j (j-1) c_j / 2."""
        return Fraction(sum((j - 1) * c for j, c in enumerate(self.vector.c, start=1)), 2)

    def spec(self) -> IntegrandSpec:
        return IntegrandSpec.sech_family(self.vector.c)

    @property
    def sech_coefficients(self) -> tuple:
        """Coefficients d_j of sech^j x in the numerator, sech x terms merged."""
        d = [-c for c in self.vector.c]
        if d:
            d[0] += self.total
        return tuple(d)

    def __str__(self):
        parts = []
        for j, d in enumerate(self.sech_coefficients, start=1):
            if d:
                parts.append(_sech_term(d, j, first=not parts))
        return ("(" + " ".join(parts) + ")/x^2") if parts else "0"


def _sech_term(c: int, j: int, first: bool) -> str:
    mono = "sech x" if j == 1 else f"sech^{j} x"
    mag = "" if abs(c) == 1 else f"{abs(c)} "
    if first:
        return ("-" if c < 0 else "") + mag + mono
    return ("- " if c < 0 else "+ ") + mag + mono


def integrand_polynomial(lows: LowerBounds) -> IntegrandPolynomial:
    v = coeffs(lows)
    return IntegrandPolynomial(v.total, v)


def symbolic_rhs(lows_or_vector) -> str:
    """Plain linear combination such as ``126*F[2]+56*F[3]+F[4]``; F[1] is omitted (F_1 = 0)."""
    v = lows_or_vector if isinstance(lows_or_vector, CoefficientVector) else coeffs(lows_or_vector)
    parts = []
    for j, c in enumerate(v.c, start=1):
        if c == 0 or j == 1:
            continue
        parts.append(f"F[{j}]" if c == 1 else f"{c}*F[{j}]")
    return "+".join(parts) if parts else "0"


def rhs_closed_form(lows_or_vector, ctx: PrecisionContext) -> cf.ClosedFormReport:
    """sum_j c_j F_j with exact integer weights."""
    v = lows_or_vector if isinstance(lows_or_vector, CoefficientVector) else coeffs(lows_or_vector)
    M = ctx.mp
    total = HPReal(M.zero, -ctx.working_digits)
    terms = []
    for j, c in enumerate(v.c, start=1):
        if c == 0 or j == 1:
            continue
        t = cf.f_seq(j, ctx).value * c
        terms.append((f"{c}*F[{j}]", t))
        total = total + t
    return cf.ClosedFormReport(total, tuple(terms))


# --------------------------------------------------------------------------- #
# Displayed constant combinations


class Basis:
    """Labels of the constants spanning the displayed right-hand sides."""

    G_OVER_PI = "G/pi"
    PI = "pi"
    PSI3 = "psi_3(1/4)/pi^3"
    PSI5 = "psi_5(1/4)/pi^5"
    ZETA3 = "zeta(3)/pi^2"
    ZETA5 = "zeta(5)/pi^4"
    ZETA7 = "zeta(7)/pi^6"


def _combo(**kw) -> dict:
    keys = {
        "G": Basis.G_OVER_PI, "pi": Basis.PI, "psi3": Basis.PSI3, "psi5": Basis.PSI5,
        "z3": Basis.ZETA3, "z5": Basis.ZETA5, "z7": Basis.ZETA7,
    }
    return {keys[k]: Fraction(v) for k, v in kw.items()}


@dataclass(frozen=True)
class DisplayedIdentity:
    name: str
    lows: LowerBounds
    constants: dict


DISPLAYED_IDENTITIES = (
    DisplayedIdentity("twos_N2", LowerBounds.common(2, 2), _combo(G=-4, z3=14)),
    DisplayedIdentity("twos_N3", LowerBounds.common(3, 2), _combo(G=-14, pi="-1/2", psi3="1/16", z3=42)),
    DisplayedIdentity("twos_N4", LowerBounds.common(4, 2),
                      _combo(G=-52, pi=-2, psi3="1/4", z3="448/3", z5=124)),
    DisplayedIdentity("twos_N5", LowerBounds.common(5, 2),
                      _combo(G="-385/2", pi="-33/4", psi3="95/96", psi5="1/768", z3="1610/3", z5=620)),
    DisplayedIdentity("twos_N6", LowerBounds.common(6, 2),
                      _combo(G=-719, pi="-65/2", psi3="61/16", psi5="1/128", z3="29512/15", z5=2728, z7=762)),
    DisplayedIdentity("stair_N3", LowerBounds.staircase(3), _combo(G=-10, pi="-1/2", psi3="1/16", z3=28)),
    DisplayedIdentity("stair_N4", LowerBounds.staircase(4),
                      _combo(G=-30, pi="-3/2", psi3="3/16", z3="238/3", z5=124)),
    DisplayedIdentity("stair_N5", LowerBounds.staircase(5),
                      _combo(G="-185/2", pi="-21/4", psi3="59/96", psi5="1/768", z3="700/3", z5=496)),
    DisplayedIdentity("stair_N6", LowerBounds.staircase(6),
                      _combo(G="-593/2", pi="-71/4", psi3="193/96", psi5="5/768", z3="10892/15", z5=1860, z7=762)),
)

DISPLAYED_VECTORS = {
    LowerBounds.common(2, 2): (0, 1),
    LowerBounds.common(3, 2): (0, 3, 1),
    LowerBounds.common(4, 2): (0, 10, 4, 1),
    LowerBounds.common(5, 2): (0, 35, 15, 5, 1),
    LowerBounds.common(6, 2): (0, 126, 56, 21, 6, 1),
    LowerBounds.staircase(2): (1, 1),
    LowerBounds.staircase(3): (2, 2, 1),
    LowerBounds.staircase(4): (5, 5, 3, 1),
    LowerBounds.staircase(5): (14, 14, 9, 4, 1),
    LowerBounds.staircase(6): (42, 42, 28, 14, 5, 1),
}


def basis_values(ctx: PrecisionContext) -> dict:
    pi = sf.constant("pi", ctx)
    G = sf.constant("catalan_G", ctx)
    inv_pi = HPReal(1 / pi.value, pi.error_exponent + 1)

    def ipow(k):
        out = inv_pi
        for _ in range(k - 1):
            out = out * inv_pi
        return out

    return {
        Basis.G_OVER_PI: G * inv_pi,
        Basis.PI: pi,
        Basis.PSI3: sf.polygamma(3, Fraction(1, 4), ctx) * ipow(3),
        Basis.PSI5: sf.polygamma(5, Fraction(1, 4), ctx) * ipow(5),
        Basis.ZETA3: sf.riemann_zeta(3, ctx) * ipow(2),
        Basis.ZETA5: sf.riemann_zeta(5, ctx) * ipow(4),
        Basis.ZETA7: sf.riemann_zeta(7, ctx) * ipow(6),
    }


def constant_combination(constants: dict, ctx: PrecisionContext) -> HPReal:
    vals = basis_values(ctx)
    total = HPReal(ctx.mp.zero, -ctx.working_digits)
    for key, coeff in constants.items():
        total = total + vals[key] * coeff
    return total


# --------------------------------------------------------------------------- #
# Normalized limits


def normalized_weight(kind: Family, j: int) -> Fraction:
    """Limit weight of F_j: 2^{-(j-m)-1} for common(m), j/2^{j+1} for the staircase."""
    if kind.kind == "common":
        r = j - kind.m
        return Fraction(1, 2 ** (r + 1)) if r >= 0 else Fraction(0)
    return Fraction(j, 2 ** (j + 1))


def limit_kernel(kind: Family) -> IntegrandSpec:
    return IntegrandSpec.limit_common(kind.m) if kind.kind == "common" else IntegrandSpec.limit_staircase()


@dataclass(frozen=True)
class SeriesReport:
    value: HPReal
    last_index: int
    tail_bound: float  # log10 of the reported truncation bound
    growth_exponent: float


def _tail_log10(kind: Family, J: int, FJ: float, p: float) -> float:
    """log10 of sum_{j>J} w_j FJ (j/J)^p, the extrapolated tail."""
    logs = []
    for j in range(J + 1, J + 400):
        w = normalized_weight(kind, j)
        lw = math.log10(w.numerator) - math.log10(w.denominator)
        logs.append(lw + math.log10(FJ) + p * math.log10(j / J))
        if len(logs) > 5 and logs[-1] < logs[0] - 20:
            break
    return _log10_sum(logs)


def normalized_series(kind: Family, ctx: PrecisionContext, tail_eps=None, jmax: int = SERIES_JMAX) -> SeriesReport:
    """Weighted series sum_j w_j F_j with an empirical |F_j| growth monitor.

    |F_j| is assumed to grow at most like j^p, with p fitted on the computed
    values (plus a safety margin) and re-checked as the sum proceeds.  The
    extrapolated tail is reported, not silently absorbed.
    """
    if tail_eps is None:
        tail_eps = -(ctx.target_digits + 2)
    else:
        raw = to_mpf(ctx.mp, tail_eps)
        if not raw > 0:
            raise DomainError("tail_eps must be positive")
        tail_eps = float(ctx.mp.log10(raw))
    start = kind.m if kind.kind == "common" else 1
    total = HPReal(ctx.mp.zero, -ctx.working_digits)
    history = []  # (j, log10 |w_j F_j|)
    absF = []
    p = 1.0
    for j in range(start, jmax + 1):
        F = cf.f_seq(j, ctx).value
        w = normalized_weight(kind, j)
        term = F * w
        total = total + term
        absF.append((j, abs(float(F.value))))
        history.append((j, _log10_abs(term.mp, term.value) if term.value else -math.inf))
        pts = [(math.log(jj), math.log(f)) for jj, f in absF if f > 0 and jj >= 4]
        if len(pts) >= 4:
            half = pts[len(pts) // 2:] if len(pts) >= 8 else pts
            (x0, y0), (x1, y1) = half[0], half[-1]
            slope = (y1 - y0) / (x1 - x0) if x1 > x0 else 1.0
            p = max(slope, 0.0) + 0.5
        if j - start < 6:
            continue
        recent = [h for _, h in history[-4:]]
        if any(b > a for a, b in zip(recent, recent[1:])):
            continue  # still in the growth phase
        FJ = max(f for _, f in absF[-3:])
        tail = _tail_log10(kind, j, FJ, p)
        if tail <= tail_eps:
            e = math.ceil(_log10_sum([total.error_exponent, tail]))
            return SeriesReport(HPReal(total.value, e), j, tail, p)
    raise DiagnosticsError(
        f"normalized series did not reach 10^{tail_eps:.1f} by j={jmax}; last |w_j F_j| ~ 10^{history[-1][1]:.1f}"
    )


def finite_normalized_sum(kind: Family, N: int, ctx: PrecisionContext) -> HPReal:
    """(1/sum c) sum_j c_j F_j at finite N, with the closed-form vector."""
    v = coeffs_closed(kind, N)
    rep = rhs_closed_form(v, ctx)
    return rep.value / v.total
