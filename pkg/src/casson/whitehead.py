"""Representations of the Whitehead link group, doubled-knot gluing and bending.

The link group has generators ``x, y`` (one meridian per component) and a
single relation ``LHS = RHS``.  Up to conjugation a non-parabolic
representation is

    x -> [[u, s], [0, 1/u]],    y -> [[v, 0], [t, 1/v]],

and the relation holds exactly when the polynomial ``f(s, t, u, v)`` below
vanishes (or ``s t = 0`` with the diagonal/triangular exceptions).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

import numpy as np

from .elimination.riley import chart_points, numeric_assignment, riley_polynomial
from .elimination.sl2 import GaussianRational, Mat2, commutator, eval_word
from .elimination.words import Presentation, Word, parse_word
from .poly import MPoly

GENS = ("x", "y")
LHS = parse_word("y x Y X y X Y x", GENS)
RHS = parse_word("x Y X y X Y x y", GENS)
RELATOR = LHS * RHS.inverse()
# y^-1 x y x^-1 y x y^-1 x^-1  and  y^-1 x^-1 y x y^-1 x y x^-1
LAMBDA_X = parse_word("Y x y X y x Y X", GENS)
LAMBDA_Y = parse_word("Y X y x Y x y X", GENS)

FVARS = ("s", "t", "u", "v")


def whitehead_presentation() -> Presentation:
    """Generators ``x, y``; the ``x`` component supplies meridian and longitude.
    Both longitudes are kept in ``extra``."""
    return Presentation(GENS, (RELATOR,), Word.gen("x"), LAMBDA_X, "whitehead",
                        {"lambda_x": LAMBDA_X, "lambda_y": LAMBDA_Y, "lhs": LHS, "rhs": RHS})


def f_poly() -> MPoly:
    s, t, u, v = MPoly.gens(FVARS)
    st = s * t
    return (u**2 * v**2 * st**3
            + u * v * (u**2 * v**2 - 2 * u**2 - 2 * v**2 + 1) * st**2
            + (u**4 + v**4 - u**2 * (v**2 - 1) ** 2 - v**2 * (u**2 - 1) ** 2) * st
            + u * v * (u**2 - 1) * (v**2 - 1))


def f_cubic(u: complex, v: complex) -> np.ndarray:
    """Coefficients (highest first) of ``w -> f(1, w, u, v)``."""
    return np.array([
        u**2 * v**2,
        u * v * (u**2 * v**2 - 2 * u**2 - 2 * v**2 + 1),
        u**4 + v**4 - u**2 * (v**2 - 1) ** 2 - v**2 * (u**2 - 1) ** 2,
        u * v * (u**2 - 1) * (v**2 - 1),
    ], dtype=complex)


# ---------------------------------------------------------------------------
# charts


class ChartKind(str, enum.Enum):
    U1 = "U1"
    U2 = "U2"
    X0 = "X0"
    GENERAL = "general"


@dataclass(frozen=True)
class WhiteheadChart:
    s: object
    t: object
    u: object
    v: object
    chart: ChartKind = ChartKind.GENERAL

    def __post_init__(self):
        object.__setattr__(self, "chart", ChartKind(self.chart))
        for name in ("u", "v"):
            val = getattr(self, name)
            if _is_zero(val):
                raise ValueError(f"{name} must be nonzero")
        if self.chart is ChartKind.U1 and not _is_one(self.s):
            raise ValueError("chart U1 requires s = 1")
        if self.chart is ChartKind.U2 and not _is_one(self.t):
            raise ValueError("chart U2 requires t = 1")
        if self.chart is ChartKind.X0 and not (_is_zero(self.s) and _is_zero(self.t)):
            raise ValueError("chart X0 requires s = t = 0")

    def values(self) -> tuple:
        return (self.s, self.t, self.u, self.v)

    def f_value(self):
        """``f`` at this chart point, in the chart's scalar domain."""
        vals = dict(zip(FVARS, _promote(self.values())))
        return f_poly().evaluate_exact(vals)


def _is_zero(x) -> bool:
    if isinstance(x, MPoly):
        return x.is_zero()
    return x == 0


def _is_one(x) -> bool:
    if isinstance(x, MPoly):
        return x.is_constant() and x.constant_value() == 1
    return x == 1


def _promote(vals):
    """Bring scalars into one domain: MPoly if any is, else exact if all are."""
    polys = [x for x in vals if isinstance(x, MPoly)]
    if polys:
        variables = polys[0].variables
        return tuple(x if isinstance(x, MPoly) else MPoly.const(variables, x) for x in vals)
    if all(isinstance(x, (int, Fraction)) for x in vals):
        return tuple(Fraction(x) for x in vals)
    if all(isinstance(x, (int, Fraction, GaussianRational)) for x in vals):
        return tuple(x if isinstance(x, GaussianRational) else GaussianRational(x) for x in vals)
    return tuple(complex(x) for x in vals)


def _recip(x):
    if isinstance(x, MPoly):
        return x ** -1
    if isinstance(x, Fraction):
        return 1 / x
    return 1 / x


def chart_rep(c: WhiteheadChart) -> dict[str, Mat2]:
    s, t, u, v = _promote(c.values())
    zero = s * 0
    return {"x": Mat2(u, s, zero, _recip(u)), "y": Mat2(v, zero, t, _recip(v))}


def is_exact(c: WhiteheadChart) -> bool:
    return not isinstance(_promote(c.values())[0], complex)


def relator_difference(c: WhiteheadChart) -> Mat2:
    rep = chart_rep(c)
    return eval_word(LHS, rep) - eval_word(RHS, rep)


def relator_residual(c: WhiteheadChart):
    """``|rho(LHS) - rho(RHS)|``.  Exact domains give exactly 0 when the
    relation holds; a nonzero exact difference is reported by its float norm
    (``inf`` for symbolic entries)."""
    D = relator_difference(c)
    if is_exact(c):
        if D.is_zero():
            return 0
        try:
            return D.norm()
        except TypeError:
            return math.inf
    return D.norm()


@dataclass
class EquivalenceReport:
    samples: int
    seed: int
    on_curve_checked: int = 0
    off_curve_checked: int = 0
    on_failures: list = field(default_factory=list)
    off_failures: list = field(default_factory=list)
    max_on_residual: float = 0.0
    min_off_residual: float = math.inf

    @property
    def ok(self) -> bool:
        return not self.on_failures and not self.off_failures

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "on_curve_checked": self.on_curve_checked,
            "off_curve_checked": self.off_curve_checked,
            "on_failures": len(self.on_failures),
            "off_failures": len(self.off_failures),
            "max_on_residual": self.max_on_residual,
            "min_off_residual": self.min_off_residual,
            "ok": self.ok,
        }


def _annulus(rng: np.random.Generator, lo: float, hi: float) -> complex:
    # keep away from the degenerate values 0, 1, -1
    while True:
        z = cmath.rect(rng.uniform(lo, hi), rng.uniform(0, 2 * math.pi))
        if abs(z - 1) > 0.05 and abs(z + 1) > 0.05:
            return z


def _polish(coeffs: np.ndarray, w: complex, steps: int = 3) -> complex:
    d = np.polyder(coeffs)
    for _ in range(steps):
        dv = np.polyval(d, w)
        if dv == 0:
            break
        w = w - np.polyval(coeffs, w) / dv
    return complex(w)


def f_equivalence_check(samples: int, seed: int = 0, on_tol: float = 1e-9,
                        off_tol: float = 1e-6) -> EquivalenceReport:
    """Statistical check of ``f(1, w, u, v) = 0  <=>  relation holds`` in chart U1."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    rep = EquivalenceReport(samples, seed)
    for k in range(samples):
        u, v = _annulus(rng, 0.5, 2.0), _annulus(rng, 0.5, 2.0)
        cub = f_cubic(u, v)
        ws = [_polish(cub, w) for w in np.roots(cub)]
        for w in ws:
            r = relator_residual(WhiteheadChart(1, w, u, v, ChartKind.U1))
            rep.on_curve_checked += 1
            rep.max_on_residual = max(rep.max_on_residual, r)
            if not r < on_tol:
                rep.on_failures.append({"sample": k, "u": u, "v": v, "w": w, "residual": r})
        # off-curve: a point well away from every root
        while True:
            w = _annulus(rng, 0.3, 3.0)
            if min(abs(w - x) for x in ws) > 0.1:
                break
        r = relator_residual(WhiteheadChart(1, w, u, v, ChartKind.U1))
        rep.off_curve_checked += 1
        rep.min_off_residual = min(rep.min_off_residual, r)
        if not r > off_tol:
            rep.off_failures.append({"sample": k, "u": u, "v": v, "w": w, "residual": r})
    return rep


# ---------------------------------------------------------------------------
# reducible representations and components


class Side(str, enum.Enum):
    X_PARABOLIC = "x-parabolic"
    Y_PARABOLIC = "y-parabolic"


def reducible_nonabelian_family(side, sign: int, param) -> WhiteheadChart:
    """The two families of reducible non-abelian representations.

    ``x-parabolic``: ``x -> [[e, 1], [0, e]]``, ``y -> diag(v, 1/v)`` with ``v = param``;
    ``y-parabolic``: ``x -> diag(u, 1/u)``, ``y -> [[e, 0], [1, e]]`` with ``u = param``;
    ``e = sign``.
    """
    side = Side(side)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if isinstance(param, MPoly):
        if param.is_constant() and param.constant_value() in (0, 1, -1):
            raise ValueError("parameter must avoid 0, 1, -1")
    elif param in (0, 1, -1):
        raise ValueError("parameter must avoid 0, 1, -1")
    if side is Side.X_PARABOLIC:
        return WhiteheadChart(1, 0, sign, param, ChartKind.U1)
    return WhiteheadChart(0, 1, param, sign, ChartKind.U2)


def boundary_traces(c: WhiteheadChart) -> dict[str, object]:
    rep = chart_rep(c)
    return {
        "x": rep["x"].trace(),
        "y": rep["y"].trace(),
        "lambda_x": eval_word(LAMBDA_X, rep).trace(),
        "lambda_y": eval_word(LAMBDA_Y, rep).trace(),
    }


class Component(str, enum.Enum):
    X0 = "X0"
    X1 = "X1"
    X0_X1 = "X0∩X1"
    INDETERMINATE = "indeterminate"

    def __str__(self):
        return self.value


def component_membership(c: WhiteheadChart, tol: float = 1e-10, gap: float = 1e-6,
                         residual_tol: float = 1e-8) -> Component:
    """Which component of the character variety carries the character.

    Irreducible characters lie on X1.  Reducible ones share their character
    with the diagonal representation with the same ``u, v``; those lie on both
    components exactly when ``u = +-1`` or ``v = +-1``.  In float domains,
    values between ``tol`` and ``gap`` are reported as indeterminate.
    """
    exact = is_exact(c)
    res = relator_residual(c)
    if (exact and res != 0) or (not exact and res > residual_tol):
        raise ValueError(f"relation not satisfied (residual {res})")
    rep = chart_rep(c)
    k = commutator(rep["x"], rep["y"]).trace() - 2
    _s, _t, u, v = _promote(c.values())
    if exact:
        reducible = _is_zero(k)
        special = any(_is_zero(z - 1) or _is_zero(z + 1) for z in (u, v))
        if not reducible:
            return Component.X1
        return Component.X0_X1 if special else Component.X0
    dk = abs(complex(k))
    if dk > gap:
        return Component.X1
    if dk > tol:
        return Component.INDETERMINATE
    dist = min(abs(complex(z) - e) for z in (u, v) for e in (1, -1))
    if dist < tol:
        return Component.X0_X1
    if dist > gap:
        return Component.X0
    return Component.INDETERMINATE


def boundary_eigenvalues(c: WhiteheadChart, component: str = "y") -> tuple[complex, complex, bool]:
    """Eigenvalue pair ``(m, l)`` of (meridian, longitude) on a boundary torus.

    ``m`` is an eigenvalue of the meridian image and ``l`` the eigenvalue of
    the longitude on the same eigenvector.  The flag is True when the
    meridian image is parabolic (not diagonalizable), in which case the
    eigenvalues are still returned but have no eigenvector bookkeeping.
    """
    rep = {g: M.to_complex() for g, M in chart_rep(c).items()}
    mer = rep[component]
    lon = eval_word(LAMBDA_Y if component == "y" else LAMBDA_X, rep)
    tr = complex(mer.trace())
    disc = cmath.sqrt(tr * tr - 4)
    m = (tr + disc) / 2
    if abs(disc) < 1e-9:
        # parabolic or central: the longitude shares the fixed vector
        vec = _eigvec(mer, m)
        l = _rayleigh(lon, vec) if vec is not None else complex(lon.trace()) / 2  # noqa: E741
        return m, l, True
    vec = _eigvec(mer, m)
    return m, _rayleigh(lon, vec), False


def _eigvec(M: Mat2, lam: complex):
    a, b, c, d = (complex(e) for e in M.entries())
    cand = [np.array([b, lam - a]), np.array([lam - d, c])]
    cand.sort(key=lambda x: -np.linalg.norm(x))
    v = cand[0]
    if np.linalg.norm(v) < 1e-14:
        return None
    return v / np.linalg.norm(v)


def _rayleigh(M: Mat2, vec) -> complex:
    A = np.array([[complex(M.a), complex(M.b)], [complex(M.c), complex(M.d)]])
    w = A @ vec
    return complex(np.vdot(vec, w) / np.vdot(vec, vec))


FORBIDDEN = ("m - 1", "m + 1", "l + m^2")


def forbidden_values(m: complex, l: complex) -> tuple[complex, complex, complex]:  # noqa: E741
    return (m - 1, m + 1, l + m * m)


# ---------------------------------------------------------------------------
# gluing to a companion knot


def _identity():
    return Mat2(1 + 0j, 0j, 0j, 1 + 0j)


@dataclass(frozen=True)
class GluingConfig:
    """A companion representation ``rho1`` (on the generators of ``J``), a
    Whitehead chart point, the twisting ``n`` and a conjugator ``P`` applied
    to ``rho1`` so that both sides live in the same frame."""

    J: Presentation
    rho1: Mapping[str, Mat2]
    chart: WhiteheadChart
    n: int
    conjugator: Mat2 = field(default_factory=_identity)
    riley_point: tuple | None = None
    residual: float = math.nan

    def rho1_conj(self, w: Word) -> Mat2:
        P = self.conjugator
        return P * eval_word(w, self.rho1) * P.inverse_general()

    def to_json(self) -> dict:
        c = self.chart
        cx = lambda z: [complex(z).real, complex(z).imag]  # noqa: E731
        out = {
            "n": self.n,
            "chart": {"s": cx(c.s), "t": cx(c.t), "u": cx(c.u), "v": cx(c.v)},
            "conjugator": [cx(e) for e in self.conjugator.entries()],
            "residual": self.residual,
        }
        if self.riley_point is not None:
            out["riley_point"] = {"m": cx(self.riley_point[0]), "s": cx(self.riley_point[1])}
        else:
            out["rho1_meridian"] = [cx(e) for e in eval_word(self.J.meridian, self.rho1).entries()]
        return out


def gluing_residual(g: GluingConfig) -> float:
    rep = {k: M.to_complex() for k, M in chart_rep(g.chart).items()}
    ly = eval_word(LAMBDA_Y, rep)
    target = eval_word(Word.gen("y") * LAMBDA_Y ** g.n, rep)
    a = (g.rho1_conj(g.J.meridian) - ly).norm()
    b = (g.rho1_conj(g.J.longitude) - target).norm()
    return a + b


@dataclass(frozen=True)
class SolverConfig:
    max_iter: int = 100
    target: float = 1e-12
    accept: float = 1e-9
    annulus: tuple[float, float] = (0.3, 3.0)
    fd_step: float = 1e-7


def _mat(z) -> tuple:
    return (z[0], z[1], z[2], z[3])


# 2x2 matrices as flat tuples (a, b, c, d); plain complex arithmetic is far
# cheaper than numpy for matrices this small


def _mm(A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _sl2_inv(A):
    a, b, c, d = A
    return (d, -b, -c, a)


def _sub(A, B):
    return tuple(x - y for x, y in zip(A, B))


_I = (1 + 0j, 0j, 0j, 1 + 0j)


def _word_np(w: Word, fwd: dict) -> tuple:
    inv = {g: _sl2_inv(M) for g, M in fwd.items()}
    out = _I
    for g, e in w:
        out = _mm(out, fwd[g] if e > 0 else inv[g])
    return out


def _mpow(A, n: int):
    base = A if n >= 0 else _sl2_inv(A)
    out = _I
    for _ in range(abs(n)):
        out = _mm(out, base)
    return out


def _whitehead_np(t, u, v):
    return {"x": (u, 1.0 + 0j, 0j, 1 / u), "y": (v, 0j, t, 1 / v)}


def _riley_np(J: Presentation, m, s):
    g1, g2 = J.generators
    return {g1: (m, 1.0 + 0j, 0j, 1 / m), g2: (m, 0j, s, 1 / m)}


def _system(z: np.ndarray, J: Presentation, n: int, phi, mode: str) -> np.ndarray:
    """Residual vector.  Unknowns (Riley mode): m, sJ, t, u, v, P (4 entries);
    (abelian mode): t, u, v."""
    if mode == "riley":
        m, sJ, t, u, v = z[:5]
        P = _mat(z[5:9])
    else:
        t, u, v = z[:3]
    W = _whitehead_np(t, u, v)
    eqs = [np.polyval(f_cubic(u, v), t)]
    eqs.extend(_sub(_word_np(LHS, W), _word_np(RHS, W)))
    ly = _word_np(LAMBDA_Y, W)
    target = _mm(W["y"], _mpow(ly, n))
    if mode == "riley":
        eqs.append(complex(phi(m, sJ)))
        R = _riley_np(J, m, sJ)
        mu = _word_np(J.meridian, R)
        lam = _word_np(J.longitude, R)
        eqs.append(P[0] * P[3] - P[1] * P[2] - 1)
        eqs.extend(_sub(_mm(P, mu), _mm(ly, P)))
        eqs.extend(_sub(_mm(P, lam), _mm(target, P)))
    else:
        # abelian companion: rho1(longitude) = I, rho1(meridian) matches rho(lambda_y)
        eqs.extend(_sub(target, _I))
    return np.array(eqs, dtype=complex)


def _gauss_newton(F, z0: np.ndarray, cfg: SolverConfig) -> tuple[np.ndarray, float]:
    z = z0.astype(complex)
    r = F(z)
    err = np.linalg.norm(r)
    for _ in range(cfg.max_iter):
        if not np.isfinite(err):
            break
        if err < cfg.target:
            break
        J = np.empty((len(r), len(z)), dtype=complex)
        for k in range(len(z)):
            h = cfg.fd_step * max(1.0, abs(z[k]))
            dz = np.zeros_like(z)
            dz[k] = h
            J[:, k] = (F(z + dz) - r) / h
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        while lam > 1e-4:
            zn = z + lam * step
            with np.errstate(all="ignore"):
                rn = F(zn)
            en = np.linalg.norm(rn)
            if np.isfinite(en) and en < err:
                z, r, err = zn, rn, en
                break
            lam /= 2
        else:
            break
    return z, err


def _conjugator_guess(A, B) -> np.ndarray:
    """Some P with P A ~ B P, built from matched eigenvectors."""
    wa, va = np.linalg.eig(np.reshape(A, (2, 2)))
    wb, vb = np.linalg.eig(np.reshape(B, (2, 2)))
    if abs(wa[0] - wb[0]) + abs(wa[1] - wb[1]) > abs(wa[0] - wb[1]) + abs(wa[1] - wb[0]):
        vb = vb[:, ::-1]
    P = vb @ np.linalg.inv(va)
    return P / np.sqrt(np.linalg.det(P))


def solve_gluing(J: Presentation, n: int, seeds: int, seed: int = 0,
                 config: SolverConfig = SolverConfig()) -> list[GluingConfig]:
    """Search for gluings of ``J`` with the Whitehead link exterior.

    Damped Gauss-Newton (least squares on the stacked relator, Riley and
    gluing equations) from random starts; only converged points are
    returned, sorted by residual then parameters.  An empty list is not a
    proof that no gluing exists.
    """
    if seeds < 1:
        raise ValueError("seeds must be at least 1")
    if J.meridian is None or J.longitude is None:
        raise ValueError("companion presentation needs meridian and longitude")
    rr = riley_polynomial(J)
    mode = "riley" if rr.irreducible_locus else "abelian"
    phi = rr.phi
    rng = np.random.default_rng(seed)
    lo, hi = config.annulus
    found = []
    for _ in range(seeds):
        u, v = _annulus(rng, lo, hi), _annulus(rng, lo, hi)
        ts = np.roots(f_cubic(u, v))
        t = complex(ts[rng.integers(len(ts))])
        if mode == "riley":
            W = _whitehead_np(t, u, v)
            ly = _word_np(LAMBDA_Y, W)
            ev = np.linalg.eigvals(np.reshape(ly, (2, 2)))
            m = complex(ev[rng.integers(2)])
            if abs(m) < 1e-6 or not np.isfinite(m):
                continue
            ss = chart_points(rr, m)
            if not ss:
                continue
            sJ = complex(ss[rng.integers(len(ss))])
            P0 = _conjugator_guess(_word_np(J.meridian, _riley_np(J, m, sJ)), ly)
            z0 = np.concatenate([[m, sJ, t, u, v], P0.ravel()])
        else:
            z0 = np.array([t, u, v])
        with np.errstate(all="ignore"):
            z, err = _gauss_newton(lambda z: _system(z, J, n, phi, mode), z0, config)
        if not err < config.accept:
            continue
        if mode == "riley":
            m, sJ, t, u, v = (complex(x) for x in z[:5])
            P = Mat2(*(complex(x) for x in z[5:9]))
            rho1 = numeric_assignment(J, m, sJ)
            point = (m, sJ)
        else:
            t, u, v = (complex(x) for x in z[:3])
            W = _whitehead_np(t, u, v)
            ly = _word_np(LAMBDA_Y, W)
            # abelian companion: every generator maps to rho(lambda_y)
            M = Mat2(*ly)
            rho1 = {g: M for g in J.generators}
            P = _identity()
            point = None
        chart = WhiteheadChart(1, t, u, v, ChartKind.U1)
        g = GluingConfig(J, rho1, chart, n, P, point)
        res = gluing_residual(g)
        if res < config.accept:
            found.append(replace(g, residual=res))
    found.sort(key=lambda g: (round(g.residual, 15),
                              tuple((round(complex(x).real, 12), round(complex(x).imag, 12))
                                    for x in g.chart.values())))
    return found


def companion_is_irreducible(g: GluingConfig, tol: float = 1e-10) -> bool:
    gens = list(g.J.generators)
    A = g.rho1[gens[0]].to_complex()
    B = g.rho1[gens[1]].to_complex()
    return abs(complex(commutator(A, B).trace()) - 2) > tol


def pattern_eigenvalues(g: GluingConfig) -> tuple[complex, complex]:
    """``(m, l)`` of the doubled knot: ``x`` is its meridian, ``lambda_x`` its
    longitude; ``x`` is upper triangular in the chart so ``e1`` is a common
    eigenvector."""
    rep = {k: M.to_complex() for k, M in chart_rep(g.chart).items()}
    lam = eval_word(LAMBDA_X, rep)
    return complex(rep["x"].a), complex(lam.a)


# ---------------------------------------------------------------------------
# bending


@dataclass(frozen=True)
class ConnectedSumPair:
    """Representations of two knot groups that agree on the shared meridian.

    ``first`` and ``second`` map each factor's generators to matrices; the
    meridians ``mu1``, ``mu2`` must have the same (diagonal) image.
    """

    first: Mapping[str, Mat2]
    second: Mapping[str, Mat2]
    mu1: Word
    mu2: Word

    def meridian_image(self) -> Mat2:
        return eval_word(self.mu1, self.first)


def diagonal_riley_pair(P1: Presentation, P2: Presentation, m, s1, s2) -> ConnectedSumPair:
    """Exact connected-sum pair from Riley chart points ``(m, s1)`` and ``(m, s2)``.

    Both factors are conjugated by ``[[1, 1], [0, 1/m - m]]`` which
    diagonalizes the meridian image to ``diag(m, 1/m)``.
    """
    def conj(P, s):
        g1, g2 = P.generators
        minv = 1 / m if not isinstance(m, complex) else 1 / m
        A = Mat2(m, 1, 0, minv)
        B = Mat2(m, 0, s, minv)
        Q = Mat2(1, 1, 0, minv - m)
        Qi = Q.inverse_general()
        return {g1: Qi * A * Q, g2: Qi * B * Q}

    if m in (1, -1) or m == 0:
        raise ValueError("meridian eigenvalue must avoid 0 and +-1")
    return ConnectedSumPair(conj(P1, s1), conj(P2, s2), P1.meridian, P2.meridian)


def _is_diagonal(M: Mat2) -> bool:
    return _is_zero(M.b) and _is_zero(M.c)


def bend(obj, a):
    """Conjugate the second factor by ``diag(a, 1/a)``.

    For a :class:`ConnectedSumPair` the shared meridian image must already be
    diagonal with eigenvalue not ``+-1``.  For a :class:`GluingConfig` the
    companion side is conjugated by the element of the same torus in the
    eigenbasis of ``rho(lambda_y)``.
    """
    if a == 0:
        raise ValueError("bending parameter must be nonzero")
    if isinstance(obj, ConnectedSumPair):
        M = obj.meridian_image()
        if not _is_diagonal(M):
            raise ValueError("shared meridian image is not diagonal")
        if M.a in (1, -1):
            raise ValueError("meridian eigenvalue +-1: stabilizer is not the diagonal torus")
        ainv = 1 / a if not isinstance(a, int) else Fraction(1, a)
        A = Mat2(a, 0, 0, ainv)
        Ai = Mat2(ainv, 0, 0, a)
        return ConnectedSumPair(obj.first, {g: A * X * Ai for g, X in obj.second.items()}, obj.mu1, obj.mu2)
    if isinstance(obj, GluingConfig):
        rep = {k: M.to_complex() for k, M in chart_rep(obj.chart).items()}
        ly = eval_word(LAMBDA_Y, rep)
        L = np.array([[ly.a, ly.b], [ly.c, ly.d]], dtype=complex)
        w, V = np.linalg.eig(L)
        if abs(w[0] - w[1]) < 1e-9:
            raise ValueError("boundary image is not diagonalizable with distinct eigenvalues")
        a = complex(a)
        A = V @ np.diag([a, 1 / a]) @ np.linalg.inv(V)
        Am = Mat2(*(complex(x) for x in A.ravel()))
        g = replace(obj, conjugator=Am * obj.conjugator)
        return replace(g, residual=gluing_residual(g))
    raise TypeError(f"cannot bend {type(obj).__name__}")


def mixed_trace(pair: ConnectedSumPair, w1: str, w2: str):
    """Trace of ``rho(g1) rho(g2)`` with ``g1`` from the first factor and ``g2``
    from the second; generic witness that bending changes the character."""
    return (pair.first[w1] * pair.second[w2]).trace()


def pair_boundary_traces(pair: ConnectedSumPair, lon1: Word, lon2: Word) -> tuple:
    return (
        eval_word(pair.mu1, pair.first).trace(),
        eval_word(pair.mu2, pair.second).trace(),
        eval_word(lon1, pair.first).trace(),
        eval_word(lon2, pair.second).trace(),
    )
