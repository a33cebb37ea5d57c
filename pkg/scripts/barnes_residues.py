#!/usr/bin/env python3
"""Barnes zeta: finite reduction vs direct summation, and residues at the poles."""

import argparse
from fractions import Fraction

from gstirling import closed_forms as cf
from gstirling.core import agreement_digits, make_context
from gstirling.verify import BARNES_POINTS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--x", default="7/3", help="shift used for the residue table")
    ap.add_argument("--max-m", type=int, default=4)
    args = ap.parse_args()
    ctx = make_context(args.digits)
    for n, s, x in BARNES_POINTS:
        red = cf.barnes_zeta(n, s, x, ctx)
        direct = cf.barnes_direct_sum(n, s, x, ctx)
        print(f"n={n} s={s} x={x}: {red.to_decimal(20)}  direct terms={direct.terms}"
              f"  agreement {agreement_digits(red.value, direct.value.value):.1f}")
    x = Fraction(args.x)
    print(f"\nresidues of zeta_(m+1)(s, {x}) at s = m+1-k")
    for m in range(args.max_m + 1):
        for k in range(m + 1):
            exact = cf.barnes_residue(m, k, x)
            num = cf.barnes_residue_numeric(m, k, x, ctx)
            d = agreement_digits(num.value, ctx.mp.mpf(exact.numerator) / exact.denominator)
            print(f"  m={m} k={k}: {str(exact):>14}  extrapolated agreement {d:.1f}")


if __name__ == "__main__":
    main()
