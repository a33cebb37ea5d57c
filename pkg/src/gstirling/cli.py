"""Command-line interface.

Every command emits :class:`OutputRecord` objects on stdout, either as text or
as one JSON object per line.  Diagnostics go to stderr.  Exit codes: 0 on
success, 1 when a verification check fails, 2 on usage or domain errors, 3 on
precision failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from . import closed_forms as cf
from . import nested_sums as ns
from . import stirling_poly as sp
from .core import (
    CapacityError,
    ConfigurationError,
    DiagnosticsError,
    DomainError,
    GStirlingError,
    HPReal,
    PrecisionContext,
    PrecisionError,
    decimal_string,
    make_context,
    parse_rational,
)
from .quadrature import chi_interpolated, integrate
from .verify import SUITES, run_suite

DIGITS_ENV = "GSTIRLING_DIGITS"
DEFAULT_DIGITS = 40

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "OutputRecord",
    "type": "object",
    "required": ["command", "inputs", "value", "error_bound", "digits"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object", "additionalProperties": {"type": "string"}},
        "value": {"type": "string"},
        "error_bound": {"type": "string"},
        "digits": {"type": "integer", "minimum": 1},
        "symbolic": {"type": ["string", "null"]},
        "status": {"type": ["string", "null"], "enum": ["PASS", "FAIL", None]},
    },
}


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    value: str
    error_bound: str
    digits: int
    symbolic: Optional[str] = None
    status: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)

    def to_text(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.inputs.items())
        head = f"{self.command} {args}".rstrip()
        if self.status:
            return f"{self.status} {head}: {self.value} digits"
        line = f"{head} = {self.value}  (|err| <= {self.error_bound}, {self.digits} digits)"
        if self.symbolic is not None:
            line += f"\n  symbolic: {self.symbolic}"
        return line


# --------------------------------------------------------------------------- #
# Record builders


def _bound_text(exponent) -> str:
    return "0" if exponent == -math.inf else f"1e{int(exponent)}"


def _numeric_record(command: str, inputs: dict, x: HPReal, ctx: PrecisionContext, symbolic=None) -> OutputRecord:
    if x.error_exponent > -ctx.target_digits:
        raise PrecisionError(
            f"{command}: error bound 10^{x.error_exponent} misses the {ctx.target_digits}-digit target",
            estimate=x,
            error_exponent=x.error_exponent,
        )
    return OutputRecord(command, inputs, x.to_decimal(ctx.target_digits), _bound_text(x.error_exponent),
                        ctx.target_digits, symbolic)


def _exact_record(command: str, inputs: dict, q: Fraction, ctx: PrecisionContext) -> OutputRecord:
    M = ctx.mp
    v = M.mpf(q.numerator) / q.denominator
    return OutputRecord(command, inputs, decimal_string(v, ctx.target_digits), "0", ctx.target_digits, str(q))


def _lows(args) -> ns.LowerBounds:
    if args.lows is None:
        raise DomainError("--lows is required")
    try:
        bounds = [int(t) for t in args.lows.split(",") if t.strip()]
    except ValueError as exc:
        raise DomainError(f"malformed --lows {args.lows!r}") from exc
    if args.N is not None and args.N != len(bounds):
        raise DomainError(f"--N {args.N} does not match {len(bounds)} lower bounds")
    return ns.LowerBounds.of(bounds)


def _inputs(args, *names) -> dict:
    return {n: str(getattr(args, n)) for n in names if getattr(args, n, None) is not None}


# --------------------------------------------------------------------------- #
# Commands


def cmd_poly(args, ctx):
    inputs = _inputs(args, "k", "m", "x")
    if args.x is None:
        poly = sp.p_poly(args.k, args.m)
        text = str(poly)
        yield OutputRecord("poly", inputs, text, "0", ctx.target_digits, text)
    else:
        yield _exact_record("poly", inputs, sp.p_eval(args.k, args.m, parse_rational(args.x)), ctx)


def cmd_malmsten(args, ctx):
    rep = cf.malmsten(args.n, parse_rational(args.a), parse_rational(args.b), ctx)
    yield _numeric_record("malmsten", _inputs(args, "n", "a", "b"), rep.value, ctx)


def cmd_fseq(args, ctx):
    rep = cf.f_seq(args.j, ctx)
    yield _numeric_record(args.command, _inputs(args, "j"), rep.value, ctx)


def cmd_lambda(args, ctx):
    yield _numeric_record("lambda", _inputs(args, "n"), cf.lambda_seq(args.n, ctx), ctx)


def cmd_delta(args, ctx):
    yield _numeric_record("delta", _inputs(args, "n"), cf.delta_seq(args.n, ctx), ctx)


def cmd_barnes(args, ctx):
    v = cf.barnes_zeta(args.n, parse_rational(args.s), parse_rational(args.x), ctx)
    yield _numeric_record("barnes", _inputs(args, "n", "s", "x"), v, ctx)


def cmd_residue(args, ctx):
    inputs = _inputs(args, "m", "k", "x")
    x = parse_rational(args.x)
    if args.numeric:
        inputs["numeric"] = "true"
        exact = cf.barnes_residue(args.m, args.k, x)
        yield _numeric_record("residue", inputs, cf.barnes_residue_numeric(args.m, args.k, x, ctx), ctx, str(exact))
    else:
        yield _exact_record("residue", inputs, cf.barnes_residue(args.m, args.k, x), ctx)


def cmd_nested(args, ctx):
    lows = _lows(args)
    inputs = {"N": str(lows.N), "lows": ",".join(map(str, lows.bounds))}
    command = f"nested {args.action}"
    if args.action == "coeffs":
        v = ns.coeffs(lows)
        yield OutputRecord(command, inputs, ",".join(map(str, v.c)), "0", ctx.target_digits, None)
    elif args.action == "integrand":
        ip = ns.integrand_polynomial(lows)
        yield _numeric_record(command, inputs, integrate(ip.spec(), ctx), ctx, str(ip))
    elif args.action == "rhs":
        rep = ns.rhs_closed_form(lows, ctx)
        yield _numeric_record(command, inputs, rep.value, ctx, ns.symbolic_rhs(lows))
    else:
        s = ns.symbolic_rhs(lows)
        yield OutputRecord(command, inputs, s, "0", ctx.target_digits, s)


def cmd_limits(args, ctx):
    fam = ns.common(args.m) if args.family == "common" else ns.STAIRCASE
    inputs = {"family": args.family}
    if args.family == "common":
        inputs["m"] = str(args.m)
    rep = ns.normalized_series(fam, ctx)
    yield _numeric_record("limits", inputs, rep.value, ctx, f"sum_j w_j F[j], j <= {rep.last_index}")


def cmd_chis(args, ctx):
    yield _numeric_record("chis", _inputs(args, "s"), chi_interpolated(parse_rational(args.s), ctx), ctx)


def cmd_verify(args, ctx):
    for r in run_suite(args.suite, ctx):
        yield OutputRecord("verify", {"suite": r.suite, "check": r.name}, r.digits_text, "0", ctx.target_digits,
                           r.detail or None, "PASS" if r.passed else "FAIL")


# --------------------------------------------------------------------------- #
# Parser


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # Global flags are accepted both before and after the subcommand; the
    # subparser copies use SUPPRESS so they only override when given.
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--digits", type=int, default=None if defaults else argparse.SUPPRESS,
                   help=f"target decimal digits (default {DEFAULT_DIGITS}, or ${DIGITS_ENV})")
    p.add_argument("--format", choices=("text", "json"), default="text" if defaults else argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gstirling", parents=[_common_flags(True)],
                                     description="Generalized Stirling polynomials and sech-integral sequences.")
    flags = _common_flags(False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, aliases=()):
        p = sub.add_parser(name, parents=[flags], help=help_, aliases=list(aliases))
        p.set_defaults(fn=fn)
        return p

    p = add("poly", cmd_poly, "P_k(m, x) as a polynomial or at a rational x")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x")

    p = add("malmsten", cmd_malmsten, "M_n(a, b) = int_0^inf log(a x) sech^n(b x) dx")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")

    for name in ("fseq", "chi"):
        p = add(name, cmd_fseq, "F_j = int_0^inf (sech x - sech^j x) / x^2 dx")
        p.add_argument("--j", type=int, required=True)

    p = add("lambda", cmd_lambda, "lambda_n = int_0^inf tanh x sech^n x / x dx")
    p.add_argument("--n", type=int, required=True)

    p = add("delta", cmd_delta, "delta_n = F_{n+1} - F_n")
    p.add_argument("--n", type=int, required=True)

    p = add("barnes", cmd_barnes, "equal-period Barnes zeta via the finite Hurwitz reduction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--x", required=True)

    p = add("residue", cmd_residue, "residue of the Barnes zeta at s = m+1-k")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--numeric", action="store_true", help="extrapolate the residue from the pole neighbourhood")

    p = add("nested", cmd_nested, "nested-sum multiplicities and their integral identity")
    p.add_argument("action", choices=("coeffs", "integrand", "rhs", "symbolic"))
    p.add_argument("--N", type=int)
    p.add_argument("--lows", help="comma-separated lower bounds l_1,...,l_N")

    p = add("limits", cmd_limits, "normalized limiting series")
    p.add_argument("family", choices=("common", "staircase"))
    p.add_argument("--m", type=int, default=1)

    p = add("chis", cmd_chis, "chi(s) for real s > 0 by quadrature")
    p.add_argument("--s", required=True)

    p = add("verify", cmd_verify, "run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def resolve_digits(flag: Optional[int], environ=os.environ) -> int:
    if flag is not None:
        return flag
    raw = environ.get(DIGITS_ENV)
    if raw is None:
        return DEFAULT_DIGITS
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"${DIGITS_ENV}={raw!r} is not an integer") from exc


def _emit(records: Iterable[OutputRecord], fmt: str, out) -> Iterator[OutputRecord]:
    for r in records:
        print(r.to_json() if fmt == "json" else r.to_text(), file=out, flush=True)
        yield r


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        ctx = make_context(resolve_digits(args.digits))
        failed = False
        for r in _emit(args.fn(args, ctx), args.format, out):
            failed |= r.status == "FAIL"
        return EXIT_CHECK_FAILED if failed else EXIT_OK
    except (PrecisionError, DiagnosticsError) as exc:
        print(f"precision failure: {exc}", file=err)
        return EXIT_PRECISION
    except (DomainError, ConfigurationError, CapacityError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except GStirlingError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
