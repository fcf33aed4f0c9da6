"""Command-line front end.

JSON (``--json``) is the canonical output; the text form renders the same
data.  Exit codes: 0 success, 1 domain error, 2 usage error, 3 numerical
nonconvergence.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from . import __version__
from .elimination import EliminationError, Presentation, eliminate, lift_residuals
from .invariants import (
    DatabaseError,
    KnotRecord,
    SeminormQuery,
    admissible_condition_ii,
    alexander_twisted_double,
    default_db_path,
    eigenvalue_seminorm,
    find_knot,
    lambda_prime,
    lambda_prime_asymptotic,
    load_db,
)
from .poly import BiLaurent, IntPoly1, RootFindingError
from .surgery import (
    Slope,
    check_nonsingular,
    intersection_points,
    linear_growth_params,
    total_intersection,
    transversal,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

# guards that keep a single invocation bounded
MAX_POINTS_DEGREE = 5000
MAX_TRANSVERSAL_DET = 10**6
MAX_Q = 10**5
MAX_SEMINORM_XI = 50
MAX_ADMISSIBLE_P = 10**5
MAX_SAMPLES = 10**5
MAX_SEEDS = 10**4


class UsageError(Exception):
    pass


class DomainError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        # only --help / --version get here
        if message:
            self._print_message(message, sys.stdout)
        raise _EarlyExit(status)


class _EarlyExit(Exception):
    def __init__(self, status):
        self.status = status


@dataclass(frozen=True)
class CliConfig:
    command: str
    subcommand: str | None
    fmt: str
    seed: int
    db: Path


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None


def _seed(text: str) -> int:
    v = _int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _slope(text: str) -> Slope:
    try:
        return Slope.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


@functools.cache
def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--seed", type=_seed, default=argparse.SUPPRESS)
    common.add_argument("--db", default=argparse.SUPPRESS, help="knot database (default: $CASSON_DB or bundled)")

    knot = _Parser(add_help=False)
    knot.add_argument("knot", nargs="?", help="knot name in the database")
    knot.add_argument("--poly", help="inline A-hat polynomial in m, l instead of a knot name")

    top = _Parser(prog="casson", description="Eigenvalue-curve computations for knot exteriors.")
    top.add_argument("--version", action="version", version=__version__)
    top.add_argument("--json", action="store_true", default=False)
    top.add_argument("--seed", type=_seed, default=0)
    top.add_argument("--db", default=None)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ahat", help="A-hat polynomial data")
    s2 = p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s2.add_parser("deg", parents=[common, knot], help="degrees of the A-hat polynomial")
    q = s2.add_parser("mul", parents=[common], help="A-hat of a connected sum")
    q.add_argument("knots", nargs=2)

    sub.add_parser("lambda", parents=[common, knot], help="half the m-degree of A-hat")

    p = sub.add_parser("lambda-asym", parents=[common, knot], help="q-sweep of total/(2q)")
    p.add_argument("-p", type=_int, required=True)
    p.add_argument("--q-max", type=_int, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("surgery", help="intersections with surgery curves")
    s2 = p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = s2.add_parser("intersect", parents=[common, knot])
    q.add_argument("-p", type=_int, required=True)
    q.add_argument("-q", type=_int, required=True)
    q.add_argument("--points", action="store_true", help="also list the points")
    q = s2.add_parser("growth", parents=[common, knot])
    q.add_argument("-p", type=_int, required=True)

    p = sub.add_parser("transversal", parents=[common], help="certify two surgery curves meet transversally")
    p.add_argument("a", type=_slope)
    p.add_argument("b", type=_slope)

    p = sub.add_parser("alexander-double", parents=[common], help="Alexander polynomial of a twisted double")
    p.add_argument("-n", type=_int, required=True)

    p = sub.add_parser("admissible", parents=[common, knot], help="root-of-unity condition on the Alexander polynomial")
    p.add_argument("-p", type=_int, required=True)
    p.add_argument("--alexander", help="inline Alexander polynomial in t")

    p = sub.add_parser("apoly", parents=[common], help="A-polynomial of a two-generator presentation")
    p.add_argument("--presentation", required=True, help="JSON file, or - for stdin")
    p.add_argument("--lift-check", type=_int, default=0, metavar="N",
                   help="lift N random curve points back to the chart")

    p = sub.add_parser("seminorm", parents=[common, knot], help="eigenvalue-curve seminorm of (a, b)")
    p.add_argument("-a", type=_int, required=True)
    p.add_argument("-b", type=_int, required=True)

    p = sub.add_parser("whitehead", help="Whitehead link character variety")
    s2 = p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = s2.add_parser("verify", parents=[common], help="f = 0 versus the relation, sampled")
    q.add_argument("--samples", type=_int, default=500)
    q = s2.add_parser("glue", parents=[common], help="numerically glue a companion knot")
    q.add_argument("companion")
    q.add_argument("-n", type=_int, default=0)
    q.add_argument("--seeds", type=_int, default=20)

    p = sub.add_parser("db", help="knot database tools")
    s2 = p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s2.add_parser("validate", parents=[common])
    return top


# ---------------------------------------------------------------------------
# helpers


def _db_path(args) -> Path:
    return Path(args.db) if args.db else default_db_path()


_DB_CACHE: dict = {}


def _records(args) -> list[KnotRecord]:
    path = _db_path(args)
    try:
        key = (str(path), path.stat().st_mtime_ns)
    except OSError as exc:
        raise DomainError(f"cannot read database {path}: {exc.strerror}") from None
    if key not in _DB_CACHE:
        _DB_CACHE.clear()
        _DB_CACHE[key] = load_db(path)
    return _DB_CACHE[key]


def _knot_poly(args) -> tuple[str, BiLaurent, KnotRecord | None]:
    """Exactly one of the positional knot name and ``--poly``."""
    name, poly = getattr(args, "knot", None), getattr(args, "poly", None)
    if (name is None) == (poly is None):
        raise UsageError("give exactly one of a knot name or --poly")
    if poly is not None:
        A = BiLaurent.parse(poly)
        if A.is_zero():
            raise DomainError("polynomial is zero")
        return poly, A.normalize(), None
    rec = find_knot(_records(args), name)
    return rec.name, rec.ahat, rec


def _parse_alexander(text: str) -> IntPoly1:
    B = BiLaurent.parse(text, ("x", "t"))
    if B.is_zero():
        raise DomainError("Alexander polynomial is zero")
    if B.deg_m() != 0 or B.min_m() != 0:
        raise DomainError("Alexander polynomial must be in t only")
    lo = B.min_l()
    return IntPoly1({j - lo: c for (_, j), c in B.items()})


def _frac(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else str(x)


def _cx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _check_slope_size(s: Slope):
    if abs(s.p) > MAX_Q or abs(s.q) > MAX_Q:
        raise DomainError(f"slope entries are limited to |p|, |q| <= {MAX_Q}")


# ---------------------------------------------------------------------------
# commands; each returns (payload, text, exit code)


def cmd_ahat(args):
    if args.sub == "deg":
        name, A, _ = _knot_poly(args)
        data = {"knot": name, "ahat": str(A), "deg_m": A.deg_m(), "deg_l": A.deg_l()}
        return data, f"deg_m {data['deg_m']}\ndeg_l {data['deg_l']}", EXIT_OK
    recs = _records(args)
    K1, K2 = (find_knot(recs, k) for k in args.knots)
    prod = (K1.ahat * K2.ahat).normalize()
    data = {"knots": [K1.name, K2.name], "ahat": str(prod), "deg_m": prod.deg_m(),
            "lambda_prime": _frac(Fraction(prod.deg_m(), 2))}
    return data, str(prod), EXIT_OK


def cmd_lambda(args):
    name, A, _ = _knot_poly(args)
    val = Fraction(A.deg_m(), 2)
    return {"knot": name, "lambda_prime": _frac(val)}, str(val), EXIT_OK


def cmd_lambda_asym(args):
    if args.q_max < 2:
        raise UsageError("--q-max must be at least 2")
    if args.q_max > MAX_Q or abs(args.p) > MAX_Q:
        raise DomainError(f"-p and --q-max are limited to {MAX_Q}")
    if args.p == 0:
        raise DomainError("p must be nonzero")
    name, A, rec = _knot_poly(args)
    K = rec or KnotRecord(name, A, IntPoly1.constant(1))
    est = lambda_prime_asymptotic(K, args.p, args.q_max)
    rows = [{"q": q, "total": int(e * 2 * q), "estimate": float(e)} for q, e in zip(est.qs, est.estimates)]
    data = {"knot": name, "p": args.p, "limit": _frac(est.extrapolated),
            "growth": {"n": est.params.n, "c": est.params.c, "q0": est.params.q0}, "rows": rows}
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "total", "estimate"])
        for r in rows:
            w.writerow([r["q"], r["total"], repr(r["estimate"])])
        return None, buf.getvalue().rstrip("\n"), EXIT_OK
    text = "\n".join(f"{r['q']:>6} {r['total']:>8} {r['estimate']:.6f}" for r in rows)
    return data, text + f"\nlimit {data['limit']}", EXIT_OK


def cmd_surgery(args):
    name, A, rec = _knot_poly(args)
    if args.sub == "growth":
        if abs(args.p) > MAX_Q:
            raise DomainError(f"|p| is limited to {MAX_Q}")
        g = linear_growth_params(A, args.p)
        data = {"knot": name, "p": args.p, "n": g.n, "c": g.c, "q0": g.q0}
        return data, f"total = {g.n} q {'+' if g.c >= 0 else '-'} {abs(g.c)}  for q >= {g.q0}", EXIT_OK
    s = Slope.of(args.p, args.q)
    _check_slope_size(s)
    if not args.points:
        total = total_intersection(A, s)
        data = {"knot": name, "p": s.p, "q": s.q, "total": total}
        return data, f"total {total}", EXIT_OK
    if total_intersection(A, s) > MAX_POINTS_DEGREE:
        raise DomainError(f"--points is limited to {MAX_POINTS_DEGREE} intersection points")
    rep = intersection_points(A, s, rec.alexander if rec else None)
    data = {"knot": name, **rep.to_json()}
    lines = [f"total {rep.total}"]
    for pt in rep.points:
        lines.append(f"m={pt.m:.10g} l={pt.l:.10g} mult={pt.multiplicity} {pt.kind}")
    return data, "\n".join(lines), EXIT_OK


def cmd_transversal(args):
    a, b = args.a, args.b
    det = a.p * b.q - b.p * a.q
    if abs(det) > MAX_TRANSVERSAL_DET:
        raise DomainError(f"|det| is limited to {MAX_TRANSVERSAL_DET}")
    cert = transversal(a, b)
    ns = [check_nonsingular(s).certified for s in (a, b)]
    data = {"a": str(a), "b": str(b), "det": cert.det, "points": cert.count,
            "transverse": cert.transverse, "nonsingular": ns}
    word = "transverse" if cert.transverse else "not transverse"
    return data, f"{word} (det={cert.det})", EXIT_OK if cert.transverse else EXIT_DOMAIN


def cmd_alexander_double(args):
    d = alexander_twisted_double(args.n)
    return {"n": args.n, "alexander": str(d), "terms": d.to_json()}, str(d), EXIT_OK


def cmd_admissible(args):
    if args.p == 0:
        raise DomainError("p must be nonzero")
    if abs(args.p) > MAX_ADMISSIBLE_P:
        raise DomainError(f"|p| is limited to {MAX_ADMISSIBLE_P}")
    if args.alexander is not None:
        if args.knot is not None or args.poly is not None:
            raise UsageError("give exactly one of a knot name or --alexander")
        delta, name = _parse_alexander(args.alexander), args.alexander
    else:
        if args.poly is not None:
            raise UsageError("admissible needs a knot name or --alexander")
        name, _, rec = _knot_poly(args)
        delta = rec.alexander
    r = admissible_condition_ii(delta, args.p)
    data = {"knot": name, "p": args.p, "p_prime": r.p_prime, "admissible": r.ok,
            "witness": str(r.witness) if r.witness is not None else None}
    text = "true" if r.ok else f"false (common factor {r.witness})"
    return data, text, EXIT_OK


def _load_presentation(src: str, stdin: TextIO) -> Presentation:
    if src == "-":
        text = stdin.read()
    else:
        try:
            text = Path(src).read_text(encoding="utf-8")
        except OSError as exc:
            raise DomainError(f"cannot read {src}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed presentation JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DomainError("presentation JSON must be an object")
    if isinstance(data.get("presentation"), dict):
        data = data["presentation"]
    for key in ("generators", "relators"):
        if not isinstance(data.get(key), list) or not all(isinstance(x, str) for x in data[key]):
            raise DomainError(f"presentation field {key!r} must be a list of strings")
    for key in ("meridian", "longitude"):
        if key in data and not isinstance(data[key], str):
            raise DomainError(f"presentation field {key!r} must be a string")
    return Presentation.from_dict(data)


def cmd_apoly(args, stdin):
    P = _load_presentation(args.presentation, stdin)
    if P.longitude is None:
        raise DomainError("presentation needs a longitude")
    if sum(len(r) for r in P.relators) + len(P.longitude) > 400:
        raise DomainError("words are limited to 400 letters in total")
    res = eliminate(P)
    data = {"a_poly": str(res.a_poly), "ahat": str(res.ahat), "deg_m": res.ahat.deg_m(),
            "lambda_prime": _frac(Fraction(res.ahat.deg_m(), 2)), "riley": str(res.riley.phi)}
    code = EXIT_OK
    if args.lift_check:
        if not 0 < args.lift_check <= 1000:
            raise DomainError("--lift-check must be in 1..1000")
        r = lift_residuals(P, args.lift_check, seed=args.seed, result=res)
        data["lift_max_residual"] = max(r) if r else 0.0
        if r and not max(r) < 1e-8:
            code = EXIT_NONCONVERGENCE
    text = f"A = {data['a_poly']}\nAhat = {data['ahat']}\nlambda' = {data['lambda_prime']}"
    if "lift_max_residual" in data:
        text += f"\nlift residual {data['lift_max_residual']:.3g}"
    return data, text, code


def cmd_seminorm(args):
    if max(abs(args.a), abs(args.b)) > MAX_SEMINORM_XI:
        raise DomainError(f"|a|, |b| are limited to {MAX_SEMINORM_XI}")
    name, A, _ = _knot_poly(args)
    r = eigenvalue_seminorm(SeminormQuery(A, (args.a, args.b)), seed=args.seed)
    data = {"knot": name, "xi": [args.a, args.b], "value": r.value, "degenerate": r.degenerate}
    return data, str(r.value) + (" (degenerate)" if r.degenerate else ""), EXIT_OK


def cmd_whitehead(args):
    from . import whitehead as wh

    if args.sub == "verify":
        if not 1 <= args.samples <= MAX_SAMPLES:
            raise DomainError(f"--samples must be in 1..{MAX_SAMPLES}")
        rep = wh.f_equivalence_check(args.samples, args.seed)
        data = rep.to_json()
        text = (f"on-curve {rep.on_curve_checked} checked, {len(rep.on_failures)} failures "
                f"(max residual {rep.max_on_residual:.3g})\n"
                f"off-curve {rep.off_curve_checked} checked, {len(rep.off_failures)} failures "
                f"(min residual {rep.min_off_residual:.3g})")
        return data, text, EXIT_OK if rep.ok else EXIT_DOMAIN
    if not 1 <= args.seeds <= MAX_SEEDS:
        raise DomainError(f"--seeds must be in 1..{MAX_SEEDS}")
    if abs(args.n) > 1000:
        raise DomainError("|n| is limited to 1000")
    rec = find_knot(_records(args), args.companion)
    if rec.presentation is None or len(rec.presentation.generators) != 2:
        raise DomainError(f"{rec.name} has no two-generator presentation")
    sols = wh.solve_gluing(rec.presentation, args.n, args.seeds, args.seed)
    data = {"companion": rec.name, "n": args.n, "seeds": args.seeds,
            "solutions": [g.to_json() for g in sols]}
    lines = [f"{len(sols)} gluings found"]
    for g in sols:
        c = g.chart
        lines.append(f"t={complex(c.t):.8g} u={complex(c.u):.8g} v={complex(c.v):.8g} residual={g.residual:.2g}")
    return data, "\n".join(lines), EXIT_OK


def cmd_db(args):
    path = _db_path(args)
    try:
        recs = load_db(path)
    except OSError as exc:
        raise DomainError(f"cannot read database {path}: {exc.strerror}") from None
    data = {"path": str(path), "records": len(recs), "names": [r.name for r in recs], "valid": True}
    return data, f"{path}: {len(recs)} records, valid", EXIT_OK


# ---------------------------------------------------------------------------


def _config(args) -> CliConfig:
    fmt = "csv" if getattr(args, "csv", False) else ("json" if args.json else "text")
    return CliConfig(args.command, getattr(args, "sub", None), fmt, args.seed, _db_path(args))


def _emit_error(kind: str, message: str, code: int, as_json: bool, out: TextIO, err: TextIO) -> int:
    if as_json:
        out.write(json.dumps({"error": kind, "message": message, "exit": code}, sort_keys=True) + "\n")
    else:
        err.write(f"error: {message}\n")
    return code


def run(argv: list[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        return _emit_error("usage", str(exc), EXIT_USAGE, as_json, out, err)
    except _EarlyExit as exc:
        return exc.status
    handlers = {
        "ahat": cmd_ahat, "lambda": cmd_lambda, "lambda-asym": cmd_lambda_asym,
        "surgery": cmd_surgery, "transversal": cmd_transversal,
        "alexander-double": cmd_alexander_double, "admissible": cmd_admissible,
        "seminorm": cmd_seminorm, "whitehead": cmd_whitehead, "db": cmd_db,
    }
    try:
        cfg = _config(args)
        if args.command == "apoly":
            data, text, code = cmd_apoly(args, stdin or sys.stdin)
        else:
            data, text, code = handlers[args.command](args)
    except UsageError as exc:
        return _emit_error("usage", str(exc), EXIT_USAGE, as_json, out, err)
    except RootFindingError as exc:
        return _emit_error("nonconvergence", str(exc), EXIT_NONCONVERGENCE, as_json, out, err)
    except DatabaseError as exc:
        return _emit_error("database", str(exc), EXIT_DOMAIN, as_json, out, err)
    except KeyError as exc:
        return _emit_error("domain", str(exc.args[0]) if exc.args else "missing key", EXIT_DOMAIN, as_json, out, err)
    except (ValueError, EliminationError, ZeroDivisionError, OverflowError) as exc:
        return _emit_error("domain", str(exc), EXIT_DOMAIN, as_json, out, err)
    if cfg.fmt == "json" and data is not None:
        out.write(json.dumps(data, sort_keys=True, allow_nan=True, default=_json_default) + "\n")
    else:
        out.write(text + "\n")
    return code


def _json_default(x):
    if isinstance(x, complex):
        return _cx(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
