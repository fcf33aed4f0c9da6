"""Surgery curves ``m^p l^q - 1`` and their intersections with eigenvalue curves.

The curve of slope ``p/q`` is parameterized one-to-one by ``m = t^q``,
``l = t^-p``.  Substituting into a curve ``A`` and clearing the power of
``t`` gives a univariate polynomial whose roots, with multiplicity, are the
intersection points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .poly import BiLaurent, IntPoly1, RootConfig, exact_quotient, roots, substitute_surgery


class DivisibilityError(ValueError):
    """The surgery curve divides the polynomial, so the intersection is not finite."""

    def __init__(self, factor: BiLaurent, slope: Slope):
        super().__init__(f"surgery curve {factor} (slope {slope}) divides the polynomial")
        self.factor = factor
        self.slope = slope


class Slope(NamedTuple):
    p: int
    q: int

    @classmethod
    def of(cls, p: int, q: int) -> Slope:
        """Canonical slope: coprime, ``q >= 0``, and ``1/0`` the only ``q = 0`` slope."""
        p, q = int(p), int(q)
        if math.gcd(p, q) != 1:
            raise ValueError(f"slope {p}/{q} is not a coprime pair")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> Slope:
        parts = text.strip().split("/")
        if len(parts) == 1:
            return cls.of(int(parts[0]), 1)
        if len(parts) != 2:
            raise ValueError(f"cannot parse slope {text!r}")
        try:
            return cls.of(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise ValueError(f"bad slope {text!r}: {exc}") from None

    def __str__(self):
        return f"{self.p}/{self.q}"


def _slope(s) -> Slope:
    if isinstance(s, Slope):
        return Slope.of(*s)
    return Slope.of(*s)


def surgery_poly(slope) -> BiLaurent:
    """Normal form of ``m^p l^q - 1``."""
    p, q = _slope(slope)
    return (BiLaurent.monomial(p, q) - 1).normalize()


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class NonsingularCertificate:
    slope: Slope
    dF_dm: BiLaurent
    dF_dl: BiLaurent
    # which partial is a nonzero monomial, hence a unit on (C*)^2
    witness: str

    @property
    def certified(self) -> bool:
        return bool(self.witness)


def check_nonsingular(slope) -> NonsingularCertificate:
    """Symbolic check that the partials of ``m^p l^q - 1`` never vanish
    together on the torus: one of them is a nonzero monomial."""
    s = _slope(slope)
    F = BiLaurent.monomial(s.p, s.q) - 1
    dm, dl = F.diff_m(), F.diff_l()
    witness = ""
    if len(dm) == 1:
        witness = "dF/dm"
    elif len(dl) == 1:
        witness = "dF/dl"
    return NonsingularCertificate(s, dm, dl, witness)


@dataclass(frozen=True)
class TransversalityCertificate:
    a: Slope
    b: Slope
    det: int
    points: np.ndarray = field(repr=False)          # rows (m, l)
    tangent_dets: np.ndarray = field(repr=False)    # l0 * m0 * det at each point
    transverse: bool = True

    @property
    def count(self) -> int:
        return len(self.points)


def transversal(a, b, tol: float = 1e-9) -> TransversalityCertificate:
    """Certify that two distinct surgery curves meet transversally.

    The common points are ``t^q, t^-p`` with ``t`` a ``|det|``-th root of
    unity; at each one the two tangent lines
    ``p l0 (m - m0) + q m0 (l - l0)`` and ``p' l0 (m - m0) + q' m0 (l - l0)``
    have normal vectors with determinant ``l0 m0 det``.
    """
    sa, sb = _slope(a), _slope(b)
    if sa == sb:
        raise ValueError(f"slopes {sa} and {sb} are identical")
    p, q = sa
    p2, q2 = sb
    det = p * q2 - p2 * q
    k = abs(det)
    t = np.exp(2j * np.pi * np.arange(k) / k)
    m0 = t ** q
    l0 = t ** (-p)
    # both curve equations at the points
    on_a = np.abs(m0**p * l0**q - 1)
    on_b = np.abs(m0**p2 * l0**q2 - 1)
    n1 = np.stack([p * l0, q * m0], axis=1)
    n2 = np.stack([p2 * l0, q2 * m0], axis=1)
    tdet = n1[:, 0] * n2[:, 1] - n1[:, 1] * n2[:, 0]
    ok = bool(np.all(on_a < tol) and np.all(on_b < tol) and np.all(np.abs(tdet) > tol))
    return TransversalityCertificate(sa, sb, det, np.stack([m0, l0], axis=1), tdet, ok)


# ---------------------------------------------------------------------------
# intersection counting


def _guard(A: BiLaurent, s: Slope):
    if A.is_zero():
        raise ValueError("zero polynomial")
    F = surgery_poly(s)
    if exact_quotient(A, F) is not None:
        raise DivisibilityError(F, s)


def total_intersection(A: BiLaurent, slope) -> int:
    """Number of intersection points with multiplicity on the torus."""
    s = _slope(slope)
    _guard(A, s)
    poly, _ = substitute_surgery(A, s)
    return poly.degree


@dataclass(frozen=True)
class GrowthParams:
    n: int
    c: int
    q0: int

    def predicted(self, q: int) -> int:
        return self.n * q + self.c


def linear_growth_params(A: BiLaurent, p: int) -> GrowthParams:
    """``(n, c, q0)`` with ``total_intersection(A, p/q) = n q + c`` for every
    coprime ``q >= q0``.

    Writing ``A = sum_i m^i alpha_i(l)``, the substituted exponents are
    ``q i - p j``.  Once ``q`` is large the largest comes only from the top
    slice and the smallest only from ``alpha_0``; ``q0`` is the first ``q``
    where no other slice can tie or overtake them, so no cancellation occurs.
    """
    A = A.normalize()
    n = A.deg_m()
    slices = {}
    for (i, j), _c in A.items():
        slices.setdefault(i, []).append(j)
    if 0 not in slices or n not in slices:
        raise ValueError("top and bottom m-slices must be nonzero")
    if p == 0:
        # only slope 0/1; the slices collapse to their values at l = 1
        for i in (0, n):
            if A.coeff_slice(i)(1) == 0:
                raise ValueError(f"alpha_{i}(1) = 0: growth law undefined for p = 0")
        hi = {i: 0 for i in slices}
        lo = dict(hi)
    else:
        hi = {i: max(-p * j for j in js) for i, js in slices.items()}
        lo = {i: min(-p * j for j in js) for i, js in slices.items()}
    c = hi[n] - lo[0]
    q0 = 1
    for i in slices:
        if i < n:
            # need q (n - i) + hi[n] > hi[i]
            q0 = max(q0, (hi[i] - hi[n]) // (n - i) + 1)
        if i > 0:
            # need q i + lo[i] > lo[0]
            q0 = max(q0, (lo[0] - lo[i]) // i + 1)
    return GrowthParams(n, c, q0)


class PointKind(str, enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    REGULAR_OR_TYPE3 = "Regular-or-Type3"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SurgeryPoint:
    t: complex
    m: complex
    l: complex  # noqa: E741
    multiplicity: int
    kind: PointKind = PointKind.REGULAR_OR_TYPE3
    residual: float = 0.0

    def to_json(self) -> dict:
        return {
            "t": [self.t.real, self.t.imag],
            "m": [self.m.real, self.m.imag],
            "l": [self.l.real, self.l.imag],
            "mult": self.multiplicity,
            "kind": str(self.kind),
            "residual": self.residual,
        }


def classify_point(pt: SurgeryPoint, delta: IntPoly1 | None, tol: float = 1e-8) -> PointKind:
    """Type1: ``m, l`` both near +-1.  Type2: ``l`` near 1 and ``m^2`` near a
    root of ``delta``.  Anything else cannot be separated further from this data."""
    if delta is not None and delta.is_zero():
        raise ValueError("Alexander polynomial must be nonzero")
    m, l = complex(pt.m), complex(pt.l)  # noqa: E741
    near_unit = lambda z: min(abs(z - 1), abs(z + 1)) < tol  # noqa: E731
    if near_unit(m) and near_unit(l):
        return PointKind.TYPE1
    if delta is not None:
        if abs(l - 1) < tol:
            x = m * m
            scale = sum(abs(c) * abs(x) ** e for e, c in delta.items())
            if abs(delta(x)) <= tol * max(scale, 1.0):
                return PointKind.TYPE2
    return PointKind.REGULAR_OR_TYPE3


@dataclass(frozen=True)
class IntersectionReport:
    slope: Slope
    total: int
    d: int
    points: tuple[SurgeryPoint, ...]

    def to_json(self) -> dict:
        return {
            "p": self.slope.p,
            "q": self.slope.q,
            "total": self.total,
            "d": self.d,
            "points": [pt.to_json() for pt in self.points],
        }


def intersection_points(A: BiLaurent, slope, delta: IntPoly1 | None = None,
                        config: RootConfig = RootConfig(), tol: float = 1e-8) -> IntersectionReport:
    s = _slope(slope)
    _guard(A, s)
    poly, d = substitute_surgery(A, s)
    pts = []
    if poly.degree > 0:
        for t, mult in roots(poly, config):
            m = t ** s.q
            l = t ** (-s.p)  # noqa: E741
            scale = A.abs_sum(m, l)
            res = abs(A(m, l)) / scale if scale else 0.0
            base = SurgeryPoint(t, m, l, mult, PointKind.REGULAR_OR_TYPE3, float(res))
            kind = classify_point(base, delta, tol)
            pts.append(SurgeryPoint(t, m, l, mult, kind, float(res)))
    total = sum(pt.multiplicity for pt in pts)
    assert total == poly.degree
    return IntersectionReport(s, total, d, tuple(pts))
