#!/usr/bin/env python3
"""Reproduce the displayed nested-sum evaluations three ways.

For each identity: quadrature of the integrand, the exact F_j combination,
and the stated combination of G, pi, zeta values and psi_n(1/4).
"""

import argparse
import time

from gstirling import nested_sums as ns
from gstirling.core import agreement_digits, make_context
from gstirling.quadrature import integrate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=60)
    args = ap.parse_args()
    ctx = make_context(args.digits)
    print(f"{'identity':10} {'vector':22} {'value':>28} {'quad':>6} {'F-comb':>6} {'sec':>6}")
    for ident in ns.DISPLAYED_IDENTITIES:
        t = time.perf_counter()
        ip = ns.integrand_polynomial(ident.lows)
        q = integrate(ip.spec(), ctx)
        rhs = ns.rhs_closed_form(ident.lows, ctx).value
        c = ns.constant_combination(ident.constants, ctx)
        dt = time.perf_counter() - t
        dq = agreement_digits(q.value, c.value)
        dr = agreement_digits(rhs.value, c.value)
        vec = ",".join(map(str, ip.vector.c))
        print(f"{ident.name:10} {vec:22} {c.to_decimal(25):>28} {dq:6.1f} {dr:6.1f} {dt:6.2f}")


if __name__ == "__main__":
    main()
