"""Precision contexts, the high-precision real type, and exact rational polynomials.

Every inexact computation in the package runs inside a private mpmath context
obtained from a :class:`PrecisionContext`; the global ``mpmath.mp`` object is
never touched, so values computed at different precisions do not interfere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

MAX_TARGET_DIGITS = 10**6


class GStirlingError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(GStirlingError, ValueError):
    pass


class DomainError(GStirlingError, ValueError):
    pass


class CapacityError(GStirlingError, ValueError):
    pass


class PrecisionError(GStirlingError, ArithmeticError):
    """A numerical method could not reach the requested accuracy.

    ``estimate`` holds the best value obtained and ``error_exponent`` the bound
    actually achieved.
    """

    def __init__(self, message, estimate=None, error_exponent=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_exponent = error_exponent


class DiagnosticsError(GStirlingError, RuntimeError):
    pass


@lru_cache(maxsize=None)
def mp_context(dps: int) -> mpmath.ctx_mp.MPContext:
    """Private mpmath context at ``dps`` decimal digits (cached, never mutated)."""
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


def default_guard(target_digits: int) -> int:
    return 10 + math.ceil(0.2 * target_digits)


@dataclass(frozen=True)
class PrecisionContext:
    target_digits: int
    guard_digits: int
    cancellation_padding: int = 0

    def __post_init__(self):
        if not isinstance(self.target_digits, int) or self.target_digits < 1:
            raise ConfigurationError(f"target_digits must be a positive integer, got {self.target_digits!r}")
        if self.target_digits > MAX_TARGET_DIGITS:
            raise ConfigurationError(f"target_digits={self.target_digits} exceeds {MAX_TARGET_DIGITS}")
        if self.guard_digits < 10:
            raise ConfigurationError("guard_digits must be at least 10")
        if self.cancellation_padding < 0:
            raise ConfigurationError("cancellation_padding must be nonnegative")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits + self.cancellation_padding

    @property
    def mp(self):
        return mp_context(self.working_digits)

    @property
    def eps(self):
        """10**-target as an mpf of this context."""
        return self.mp.mpf(10) ** (-self.target_digits)

    def padded(self, extra: int) -> "PrecisionContext":
        """Same target with ``extra`` more digits of cancellation padding."""
        return PrecisionContext(self.target_digits, self.guard_digits, self.cancellation_padding + max(0, int(extra)))

    def with_target(self, target_digits: int) -> "PrecisionContext":
        return make_context(target_digits, self.cancellation_padding)


def make_context(target_digits: int, cancellation_padding: int = 0) -> PrecisionContext:
    if not isinstance(target_digits, int) or isinstance(target_digits, bool):
        raise ConfigurationError(f"target_digits must be an integer, got {target_digits!r}")
    if target_digits < 1 or target_digits > MAX_TARGET_DIGITS:
        raise ConfigurationError(f"target_digits must lie in [1, {MAX_TARGET_DIGITS}], got {target_digits}")
    return PrecisionContext(target_digits, default_guard(target_digits), cancellation_padding)


# --------------------------------------------------------------------------- #
# High-precision reals


def to_mpf(M, x):
    """Convert int / Fraction / str / float / mpf / HPReal into an mpf of context M."""
    if isinstance(x, HPReal):
        return M.convert(x.value)
    if isinstance(x, Fraction):
        return M.mpf(x.numerator) / x.denominator
    return M.convert(x)


def _log10_abs(M, x) -> float:
    if x == 0:
        return -math.inf
    return float(M.log10(abs(x)))


def _log10_sum(logs) -> float:
    """log10 of sum(10**l) without leaving log space."""
    logs = [l for l in logs if l != -math.inf]
    if not logs:
        return -math.inf
    top = max(logs)
    return top + math.log10(sum(10.0 ** (l - top) for l in logs))


@dataclass(frozen=True)
class HPReal:
    """A real number with an explicit error bound ``|true - value| <= 10**error_exponent``."""

    value: object
    error_exponent: int

    @classmethod
    def exact(cls, x, ctx: PrecisionContext) -> "HPReal":
        """Wrap an exactly known quantity; only the final rounding is charged."""
        M = ctx.mp
        v = to_mpf(M, x)
        return cls(v, _rounding_exponent(M, v))

    @property
    def mp(self):
        return self.value.context

    def _coerce(self, other) -> "HPReal":
        if isinstance(other, HPReal):
            return other
        M = self.mp
        v = to_mpf(M, other)
        return HPReal(v, _rounding_exponent(M, v))

    def __add__(self, other):
        o = self._coerce(other)
        v = self.value + o.value
        e = _log10_sum([self.error_exponent, o.error_exponent, _rounding_exponent(self.mp, v)])
        return HPReal(v, math.ceil(e))

    __radd__ = __add__

    def __neg__(self):
        return HPReal(-self.value, self.error_exponent)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        M = self.mp
        v = self.value * o.value
        la, lb = _log10_abs(M, self.value), _log10_abs(M, o.value)
        e = _log10_sum([
            la + o.error_exponent,
            lb + self.error_exponent,
            self.error_exponent + o.error_exponent,
            _rounding_exponent(M, v),
        ])
        return HPReal(v, math.ceil(e))

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by an exact scalar (int or Fraction) or another HPReal."""
        M = self.mp
        if isinstance(other, HPReal):
            if other.value == 0:
                raise ZeroDivisionError("HPReal division by zero")
            q = self.value / other.value
            lb = _log10_abs(M, other.value)
            # first-order propagation; assumes |err(other)| << |other|
            e = _log10_sum([
                self.error_exponent - lb,
                _log10_abs(M, q) + other.error_exponent - lb,
                _rounding_exponent(M, q),
            ])
            return HPReal(q, math.ceil(e) + 1)
        d = to_mpf(M, other)
        if d == 0:
            raise ZeroDivisionError("HPReal division by zero")
        q = self.value / d
        e = _log10_sum([self.error_exponent - _log10_abs(M, d), _rounding_exponent(M, q)])
        return HPReal(q, math.ceil(e))

    def __float__(self):
        return float(self.value)

    def __abs__(self):
        return HPReal(abs(self.value), self.error_exponent)

    def correct_digits(self) -> int:
        """Number of correct decimal places after the point implied by the bound."""
        return -self.error_exponent

    def to_decimal(self, digits: int) -> str:
        return decimal_string(self.value, digits)

    def __str__(self):
        return decimal_string(self.value, 20)


def _rounding_exponent(M, v) -> int:
    """Exponent of one unit in the last place of v in context M."""
    if v == 0:
        return -M.dps
    return math.floor(_log10_abs(M, v)) - M.dps + 1


def decimal_string(v, digits: int) -> str:
    """Fixed-point-free decimal rendering with ``digits`` significant digits."""
    M = v.context if hasattr(v, "context") else mpmath.mp
    if v == 0:
        return "0"
    return M.nstr(v, digits, strip_zeros=False, min_fixed=-5, max_fixed=digits + 1)


def agreement_digits(a, b) -> float:
    """-log10 |a-b| (absolute), +inf when equal."""
    if isinstance(a, HPReal):
        a = a.value
    if isinstance(b, HPReal):
        b = b.value
    M = a.context if hasattr(a, "context") else (b.context if hasattr(b, "context") else mpmath.mp)
    d = abs(M.convert(a) - M.convert(b))
    if d == 0:
        return math.inf
    return -float(M.log10(d))


# --------------------------------------------------------------------------- #
# Exact rational polynomials

Scalar = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a finite decimal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed rational {text!r}") from exc


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial with exact Fraction coefficients, ``coeffs[i]`` multiplying x**i."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c: Scalar) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar]) -> "RationalPolynomial":
        """Monic product of (x - r) over the given roots."""
        c = [Fraction(1)]
        for r in roots:
            r = Fraction(r)
            new = [Fraction(0)] * (len(c) + 1)
            for i, v in enumerate(c):
                new[i + 1] += v
                new[i] -= r * v
            c = new
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coeffs)
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar):
        return RationalPolynomial(c / Fraction(scalar) for c in self.coeffs)

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction, mpf for mpf/HPReal arguments."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        M = x.context if hasattr(x, "context") else x.mp
        xv = to_mpf(M, x)
        acc = M.zero
        for c in reversed(self.coeffs):
            acc = acc * xv + to_mpf(M, c)
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def compose_affine(self, a: Scalar, b: Scalar) -> "RationalPolynomial":
        """The polynomial x -> p(a + b*x)."""
        lin = RationalPolynomial([a, b])
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + RationalPolynomial.constant(c)
        return acc

    def __str__(self):
        return format_polynomial(self.coeffs)


def _as_poly(p) -> RationalPolynomial:
    if isinstance(p, RationalPolynomial):
        return p
    return RationalPolynomial.constant(p)


def format_polynomial(coeffs: Sequence[Fraction], var: str = "x") -> str:
    """Render as e.g. ``x^2 - 3x + 2``; non-integers are parenthesised."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mag = str(a) if a.denominator == 1 else f"({a})"
        if i == 0:
            body = mag
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{mag}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
