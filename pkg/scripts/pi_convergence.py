#!/usr/bin/env python3
"""Convergence of the P-ratio approximants to pi^2/2 and pi.

The error of the s=1 approximant should fall like 1/M; the script prints the
error table and the least-squares exponent.
"""

import argparse
import math

from gstirling import stirling_poly as sp
from gstirling.core import make_context


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=4, help="largest M is 10**max_exp")
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()
    ctx = make_context(args.digits)
    mp = ctx.mp
    rows = []
    for e in range(1, args.max_exp + 1):
        M = 10**e
        err = abs(sp.pi_approximant(M, 1, ctx).value - mp.pi**2 / 2)
        rel = abs(sp.pi_sqrt_approximant(M, ctx).value / mp.pi - 1)
        rows.append((M, err))
        print(f"M={M:>7}  |approx - pi^2/2| = {mp.nstr(err, 6):>12}  M*err = {mp.nstr(M * err, 6):>10}"
              f"  |sqrt form / pi - 1| = {mp.nstr(rel, 4)}")
    xs = [math.log(M) for M, _ in rows]
    ys = [float(mp.log(e)) for _, e in rows]
    xm, ym = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((a - xm) * (b - ym) for a, b in zip(xs, ys)) / sum((a - xm) ** 2 for a in xs)
    print(f"fitted decay exponent: {-slope:.4f}")


if __name__ == "__main__":
    main()
