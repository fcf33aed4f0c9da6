"""Bend a connected-sum pair of two-bridge representations and watch the traces.

Both factors use the Riley chart with the same diagonal meridian.  Boundary
traces stay fixed while the trace of a word mixing the two factors moves.

    python scripts/whitehead_bending.py [--knot 3/1] [-m 2] [--steps 20]
"""

import argparse
from fractions import Fraction

from casson import whitehead as wh
from casson.elimination import riley_polynomial, two_bridge_presentation
from casson.elimination.riley import chart_points


def riley_point(P, m: Fraction):
    """A Riley parameter ``s`` at ``m``: exact when a root is rational, else numeric."""
    rr = riley_polynomial(P)
    roots = sorted(chart_points(rr, complex(m)), key=lambda z: (abs(z.imag), z.real))
    if not roots:
        raise ValueError(f"no Riley point at m = {m}")
    for z in roots:
        guess = Fraction(z.real).limit_denominator(10**6)
        if abs(z.imag) < 1e-9 and rr.phi(m, guess) == 0:
            return m, guess
    return complex(m), roots[0]


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    x = complex(x)
    return f"{x.real:.6g}" if abs(x.imag) < 1e-12 else f"{x.real:.6g}{x.imag:+.6g}j"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--knot", default="3/1", help="two-bridge p/q")
    ap.add_argument("-m", type=Fraction, default=Fraction(2))
    ap.add_argument("-s", type=Fraction, help="Riley parameter; searched for if omitted")
    ap.add_argument("--steps", type=int, default=20)
    args = ap.parse_args()

    p, q = (int(x) for x in args.knot.split("/"))
    P = two_bridge_presentation(p, q)
    m, s = riley_point(P, args.m) if args.s is None else (args.m, args.s)
    pair = wh.diagonal_riley_pair(P, P, m, s, s)
    print(f"K({p}/{q}), m = {_fmt(m)}, s = {_fmt(s)}")
    print(f"{'a':>8}  boundary traces{'':24}mixed tr(b1 b2)")
    for k in range(1, args.steps + 1):
        a = Fraction(k, 3)
        b = wh.bend(pair, a if isinstance(m, Fraction) else float(a))
        bt = ", ".join(_fmt(x) for x in wh.pair_boundary_traces(b, P.longitude, P.longitude))
        print(f"{str(a):>8}  {bt:38s}  {_fmt(wh.mixed_trace(b, 'b', 'b'))}")


if __name__ == "__main__":
    main()
