"""Knot-level invariants built on eigenvalue curves."""

from __future__ import annotations

import json
import math
import os
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .elimination.words import Presentation
from .poly import BiLaurent, IntPoly1, MPoly, gcd1, resultant
from .surgery import GrowthParams, Slope, linear_growth_params, total_intersection


@dataclass(frozen=True)
class KnotRecord:
    name: str
    ahat: BiLaurent
    alexander: IntPoly1
    presentation: Presentation | None = None
    provenance: str = ""

    def __post_init__(self):
        problems = record_problems(self)
        if problems:
            raise ValueError(f"invalid knot record {self.name!r}: " + "; ".join(problems))

    @property
    def meridian(self):
        return self.presentation.meridian if self.presentation else None

    @property
    def longitude(self):
        return self.presentation.longitude if self.presentation else None


def record_problems(rec: KnotRecord) -> list[str]:
    out = []
    if rec.ahat.is_zero():
        out.append("ahat is zero")
    elif not rec.ahat.is_normal():
        out.append("ahat is not in normal form")
    if rec.alexander.is_zero() or abs(rec.alexander(1)) != 1:
        out.append(f"alexander polynomial {rec.alexander} does not evaluate to +-1 at t = 1")
    return out


# ---------------------------------------------------------------------------
# lambda prime


def lambda_prime(K: KnotRecord) -> Fraction:
    """Half the m-degree of the A-hat polynomial."""
    return Fraction(K.ahat.deg_m(), 2)


@dataclass(frozen=True)
class AsymptoticEstimate:
    p: int
    qs: tuple[int, ...]
    estimates: tuple[Fraction, ...]
    extrapolated: Fraction
    params: GrowthParams


def lambda_prime_asymptotic(K: KnotRecord, p: int, q_max: int) -> AsymptoticEstimate:
    """Estimates ``total_intersection(A, p/q) / (2 q)`` for coprime ``1 <= q <= q_max``
    and the limit read off from the growth law."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    qs = tuple(q for q in range(1, q_max + 1) if math.gcd(p, q) == 1)
    if not qs:
        raise ValueError(f"no q <= {q_max} is coprime to p = {p}")
    est = tuple(Fraction(total_intersection(K.ahat, Slope.of(p, q)), 2 * q) for q in qs)
    params = linear_growth_params(K.ahat, p)
    return AsymptoticEstimate(p, qs, est, Fraction(params.n, 2), params)


def connected_sum(K1: KnotRecord, K2: KnotRecord) -> KnotRecord:
    return KnotRecord(
        f"{K1.name} # {K2.name}",
        (K1.ahat * K2.ahat).normalize(),
        K1.alexander * K2.alexander,
        None,
        f"product of {K1.name} and {K2.name}",
    )


# ---------------------------------------------------------------------------
# Alexander data


def alexander_twisted_double(n: int) -> IntPoly1:
    """``n t^2 + (1 - 2n) t + n``; for ``n = 0`` the unit ``t`` is stripped to 1."""
    return IntPoly1({2: n, 1: 1 - 2 * n, 0: n}).strip_t()


def normalize_alexander(delta: IntPoly1) -> IntPoly1:
    """Representative up to units ``+-t^k``: nonzero constant term, positive
    leading coefficient."""
    return delta.strip_t().primitive() * delta.content() if delta else delta


@dataclass(frozen=True)
class AdmissibleResult:
    ok: bool
    p_prime: int
    witness: IntPoly1 | None = None

    def __bool__(self):
        return self.ok


def admissible_condition_ii(delta: IntPoly1, p: int) -> AdmissibleResult:
    """No ``p'``-th root of unity is a root of ``delta``, with ``p' = |p|`` for
    odd ``p`` and ``|p| / 2`` for even ``p``."""
    if delta.is_zero():
        raise ValueError("Alexander polynomial must be nonzero")
    if p == 0:
        raise ValueError("p must be nonzero")
    pp = abs(p) if p % 2 else abs(p) // 2
    g = gcd1(delta, IntPoly1({pp: 1, 0: -1}))
    if g.degree > 0:
        return AdmissibleResult(False, pp, g)
    return AdmissibleResult(True, pp, None)


# ---------------------------------------------------------------------------
# seminorm on an eigenvalue curve


@dataclass(frozen=True)
class SeminormQuery:
    curve: BiLaurent
    xi: tuple[int, int]

    def __post_init__(self):
        if self.curve.is_zero():
            raise ValueError("curve must be nonzero")


@dataclass(frozen=True)
class SeminormResult:
    value: int
    degenerate: bool
    samples: tuple[int, ...] = field(default=())

    def __int__(self):
        return self.value


def _fiber_count(C: BiLaurent, a: int, b: int, c: int) -> int | None:
    """Number of torus points of ``C`` where ``x + 1/x = c``, ``x = m^a l^b``.

    ``None`` signals an identically vanishing resultant.
    """
    H = (BiLaurent.monomial(2 * a, 2 * b) - BiLaurent.monomial(a, b, c) + 1).normalize()
    C = C.normalize()
    # eliminate l when b != 0: H then has monomial leading and constant trailing
    # coefficient in l, so no common root escapes to l = 0 or infinity
    if b != 0:
        elim, keep = "l", "m"
    else:
        elim, keep = "m", "l"
    vars2 = ("m", "l")
    R = resultant(MPoly.from_bilaurent(C, vars2), MPoly.from_bilaurent(H, vars2), elim)
    if R.is_zero():
        return None
    return R.degree(keep) - R.min_degree(keep)


def eigenvalue_seminorm(query: SeminormQuery, trials: int = 3, seed: int = 0) -> SeminormResult:
    """Generic number of solutions of ``m^a l^b + m^-a l^-b = c`` on the curve.

    Each trial draws an integer ``c``; the answer is the largest count seen
    (special values of ``c`` can only lose solutions).  A zero count for
    ``xi != 0`` means the trace function is constant on the curve and is
    flagged as degenerate.
    """
    a, b = query.xi
    if (a, b) == (0, 0):
        return SeminormResult(0, False, ())
    if trials < 1:
        raise ValueError("trials must be positive")
    # the trace function is symmetric under xi -> -xi
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    rng = random.Random(seed)
    counts = []
    for _ in range(trials):
        c = rng.choice([-1, 1]) * rng.randint(3, 10**6)
        k = _fiber_count(query.curve, a, b, c)
        counts.append(0 if k is None else k)
    best = max(counts)
    return SeminormResult(best, best == 0, tuple(counts))


# ---------------------------------------------------------------------------
# database

_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["name", "ahat", "alexander", "provenance"],
        "additionalProperties": False,
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "ahat": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [
                        {"type": "string", "pattern": "^-?[0-9]+$"},
                        {"type": "integer"},
                        {"type": "integer"},
                    ],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
            "alexander": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [
                        {"type": "string", "pattern": "^-?[0-9]+$"},
                        {"type": "integer", "minimum": 0},
                    ],
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
            "presentation": {
                "type": "object",
                "required": ["generators", "relators"],
                "additionalProperties": False,
                "properties": {
                    "generators": {"type": "array", "items": {"type": "string"}},
                    "relators": {"type": "array", "items": {"type": "string"}},
                    "meridian": {"type": "string"},
                    "longitude": {"type": "string"},
                },
            },
            "provenance": {"type": "string"},
        },
    },
}


class DatabaseError(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("knot database invalid:\n  " + "\n  ".join(errors))
        self.errors = errors


def default_db_path() -> Path:
    env = os.environ.get("CASSON_DB")
    if env:
        return Path(env)
    return Path(str(resources.files("casson") / "data" / "knots.json"))


def record_to_json(rec: KnotRecord) -> dict:
    out = {"name": rec.name, "ahat": rec.ahat.to_json(), "alexander": rec.alexander.to_json()}
    if rec.presentation is not None:
        out["presentation"] = rec.presentation.to_dict()
    out["provenance"] = rec.provenance
    return out


def parse_records(data) -> list[KnotRecord]:
    """Validate decoded JSON and build records, collecting every problem."""
    validator = jsonschema.Draft202012Validator(_SCHEMA)
    errors = []
    for err in sorted(validator.iter_errors(data), key=lambda e: list(e.path)):
        where = "/".join(str(x) for x in err.path) or "<root>"
        errors.append(f"{where}: {err.message}")
    if errors:
        raise DatabaseError(errors)
    records = []
    names = set()
    for idx, item in enumerate(data):
        label = f"record {idx} ({item['name']})"
        try:
            pres = Presentation.from_dict(item["presentation"], item["name"]) if "presentation" in item else None
            ahat = BiLaurent.from_json(item["ahat"])
            alex = IntPoly1.from_json(item["alexander"])
        except ValueError as exc:
            errors.append(f"{label}: {exc}")
            continue
        rec = object.__new__(KnotRecord)
        for k, v in (("name", item["name"]), ("ahat", ahat), ("alexander", alex),
                     ("presentation", pres), ("provenance", item["provenance"])):
            object.__setattr__(rec, k, v)
        problems = record_problems(rec)
        if item["name"] in names:
            problems.append("duplicate name")
        names.add(item["name"])
        if problems:
            errors.extend(f"{label}: {p}" for p in problems)
            continue
        records.append(rec)
    if errors:
        raise DatabaseError(errors)
    return records


def load_db(path: str | os.PathLike | None = None) -> list[KnotRecord]:
    p = Path(path) if path is not None else default_db_path()
    text = p.read_text(encoding="utf-8")
    if not text.strip():
        return []
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatabaseError([f"malformed JSON: {exc}"]) from None
    return parse_records(data)


_TERM = re.compile(r"\[\s+(\"-?\d+\"),\s+(-?\d+)(?:,\s+(-?\d+))?\s+\]")


def _compact_term(mt: re.Match) -> str:
    return "[" + ", ".join(g for g in mt.groups() if g is not None) + "]"


def dumps_db(records: list[KnotRecord]) -> str:
    """Deterministic text form: one polynomial term per line."""
    text = json.dumps([record_to_json(r) for r in records], indent=2)
    return _TERM.sub(_compact_term, text) + "\n"


def save_db(path: str | os.PathLike, records: list[KnotRecord]) -> None:
    Path(path).write_text(dumps_db(records), encoding="utf-8")


def find_knot(records: list[KnotRecord], name: str) -> KnotRecord:
    for r in records:
        if r.name == name:
            return r
    raise KeyError(f"unknown knot {name!r}; known: {', '.join(r.name for r in records)}")
