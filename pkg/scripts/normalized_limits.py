#!/usr/bin/env python3
"""Finite-N normalized sums approaching the limiting-kernel integrals."""

import argparse

from gstirling import nested_sums as ns
from gstirling.core import agreement_digits, make_context
from gstirling.quadrature import integrate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=22)
    ap.add_argument("--sizes", default="10,20,40,80,160")
    args = ap.parse_args()
    ctx = make_context(args.digits)
    sizes = [int(v) for v in args.sizes.split(",")]
    for fam, label in ((ns.common(1), "common m=1"), (ns.common(2), "common m=2"), (ns.STAIRCASE, "staircase")):
        series = ns.normalized_series(fam, ctx)
        kernel = integrate(ns.limit_kernel(fam), ctx)
        print(f"{label}: series {series.value.to_decimal(20)} (j <= {series.last_index}),"
              f" kernel agreement {agreement_digits(series.value.value, kernel.value):.1f} digits")
        for N in sizes:
            gap = ns.finite_normalized_sum(fam, N, ctx).value - series.value.value
            print(f"   N={N:>4}  finite - limit = {ctx.mp.nstr(gap, 6):>12}   N*gap = {ctx.mp.nstr(N * gap, 6)}")


if __name__ == "__main__":
    main()
