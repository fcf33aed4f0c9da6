"""Sweep q for fixed p and compare total intersection counts with the growth law.

    python scripts/squeeze_sweep.py [--knot trefoil] [-p 1 2 3] [--q-max 200] [--csv out.csv]
"""

import argparse
import csv
import math
import sys

from casson.invariants import find_knot, lambda_prime, load_db
from casson.surgery import Slope, linear_growth_params, total_intersection


def sweep(A, p: int, q_max: int):
    g = linear_growth_params(A, p)
    for q in range(1, q_max + 1):
        if math.gcd(p, q) != 1:
            continue
        tot = total_intersection(A, Slope.of(p, q))
        yield {"p": p, "q": q, "total": tot, "predicted": g.predicted(q), "in_range": q >= g.q0,
               "ratio": tot / (2 * q)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--knot", default="trefoil")
    ap.add_argument("-p", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--q-max", type=int, default=200)
    ap.add_argument("--csv", help="write every row to this file")
    args = ap.parse_args()

    K = find_knot(load_db(), args.knot)
    rows = []
    for p in args.p:
        g = linear_growth_params(K.ahat, p)
        part = list(sweep(K.ahat, p, args.q_max))
        rows += part
        off = [r["q"] for r in part if r["in_range"] and r["total"] != r["predicted"]]
        last = part[-1]
        print(f"p={p}: total = {g.n} q {'+' if g.c >= 0 else '-'} {abs(g.c)} for q >= {g.q0}; "
              f"{len(off)} exceptions; total/(2q) at q={last['q']}: {last['ratio']:.4f}")
    print(f"lambda' = {lambda_prime(K)}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    sys.exit(main())
