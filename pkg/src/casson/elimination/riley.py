"""Riley-chart representations and A-polynomials by resultant elimination.

For a two-generator presentation whose generators are conjugate meridians,
every non-abelian representation with meridian eigenvalue ``m`` is conjugate
to

    g1 -> [[m, 1], [0, 1/m]],    g2 -> [[m, 0], [s, 1/m]].

The relators cut out a curve ``phi(m, s) = 0``; on it the longitude image is
upper triangular with ``(1, 1)`` entry ``l``.  Eliminating ``s`` between
``phi`` and ``l = L(m, s)`` gives the eigenvalue curve.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field

import numpy as np

from ..poly import BiLaurent, IntPoly1, MPoly, bigcd, resultant, roots, squarefree_part, strip_factor
from ..poly.bivariate import content_in_m, primitive_in_l
from ..poly.multivariate import pseudo_remainder
from .sl2 import Mat2, eval_word
from .words import Presentation, Word

VARS = ("m", "s")
ELIM_VARS = ("m", "s", "l")


class EliminationError(ValueError):
    """A presentation that the elimination pipeline cannot handle."""


def riley_chart(variables=VARS) -> tuple[Mat2, Mat2]:
    """The two chart matrices over ``MPoly`` in ``(m, s)`` (Laurent in ``m``)."""
    m, s = MPoly.gens(variables[:2]) if len(variables) == 2 else (MPoly.var(variables, "m"), MPoly.var(variables, "s"))
    one = m * 0 + 1
    zero = m * 0
    minv = m ** -1
    return Mat2(m, one, zero, minv), Mat2(m, zero, s, minv)


def chart_assignment(P: Presentation, variables=VARS) -> dict[str, Mat2]:
    if len(P.generators) != 2:
        raise EliminationError(f"Riley charts need exactly 2 generators, got {len(P.generators)}")
    g1, g2 = P.generators
    A, B = riley_chart(variables)
    return {g1: A, g2: B}


def numeric_assignment(P: Presentation, m: complex, s: complex) -> dict[str, Mat2]:
    if len(P.generators) != 2:
        raise EliminationError("Riley charts need exactly 2 generators")
    g1, g2 = P.generators
    return {g1: Mat2(m, 1, 0, 1 / m), g2: Mat2(m, 0, s, 1 / m)}


def _to_bl(p: MPoly) -> BiLaurent:
    """(m, s) MPoly with integer coefficients -> BiLaurent with s in the second slot."""
    return p.to_bilaurent("m", "s")


def _from_bl(a: BiLaurent, variables=VARS) -> MPoly:
    m_idx, s_idx = variables.index("m"), variables.index("s")
    terms = {}
    for (i, j), c in a.items():
        e = [0] * len(variables)
        e[m_idx], e[s_idx] = i, j
        terms[tuple(e)] = c
    return MPoly(variables, terms)


@dataclass(frozen=True)
class RileyResult:
    """``phi`` generates the irreducible-locus condition in the chart.

    ``removed`` lists ``(factor, multiplicity)`` pairs divided out of the gcd
    of the relator entries (the reducible factor ``s`` and any factor free of
    ``s``); ``irreducible_locus`` is False when nothing is left.
    """

    phi: MPoly
    removed: tuple[tuple[str, int], ...] = ()
    m_shift: int = 0
    irreducible_locus: bool = True
    raw_gcd: BiLaurent | None = field(default=None, compare=False)

    @property
    def s_degree(self) -> int:
        return self.phi.degree("s")


def relator_entries(P: Presentation) -> list[MPoly]:
    assign = chart_assignment(P)
    out = []
    for r in P.relators:
        M = eval_word(r, assign)
        I = Mat2.identity_like(M.a)
        out.extend(e for e in (M - I).entries() if not e.is_zero())
    return out


def riley_polynomial(P: Presentation) -> RileyResult:
    entries = relator_entries(P)
    if not entries:
        raise EliminationError("relators are identically satisfied in the chart (degenerate presentation)")
    # the s-power common to all entries is the reducible (upper triangular) locus;
    # monomial factors are units in the Laurent ring, so read it off directly
    blist = [_to_bl(e) for e in entries]
    ks = min(b.min_l() for b in blist)
    g = BiLaurent()
    for b in blist:
        g = bigcd(g, b) if g else b.normalize()
        if len(g) == 1:
            break
    raw = g
    removed = []
    if ks:
        removed.append(("s", ks))
    # factors free of s cannot define a curve projecting onto the s-line;
    # they come from special meridian eigenvalues
    c = content_in_m(g)
    if c.degree > 0:
        removed.append((str(c).replace("t", "m"), 1))
        g = primitive_in_l(g)
    g = g.normalize()
    shift = -min(b.min_m() for b in blist)
    if g.deg_l() == 0:
        return RileyResult(MPoly.const(VARS, 1), tuple(removed), shift, False, raw)
    return RileyResult(_from_bl(g), tuple(removed), shift, True, raw)


def longitude_entries(P: Presentation) -> Mat2:
    if P.longitude is None:
        raise EliminationError("presentation has no longitude")
    return eval_word(P.longitude, chart_assignment(P))


@dataclass(frozen=True)
class EliminationResult:
    a_poly: BiLaurent
    ahat: BiLaurent
    resultant: BiLaurent
    riley: RileyResult
    l_power: int


def eliminate(P: Presentation) -> EliminationResult:
    """Run the full pipeline and keep the intermediate data."""
    rr = riley_polynomial(P)
    if not rr.irreducible_locus:
        one = BiLaurent.constant(1)
        return EliminationResult(one, one, one, rr, 0)
    L = longitude_entries(P).a
    # put everything over (m, s, l); L = N / m^k with N polynomial
    phi = rr.phi.with_variables(ELIM_VARS)
    N, shifts = L.with_variables(ELIM_VARS).clear_denominators()
    km = shifts["m"]
    if shifts["s"] != 0:
        raise EliminationError("longitude entry has a pole in s")
    lvar = MPoly.var(ELIM_VARS, "l")
    mono = MPoly.var(ELIM_VARS, "m", km) if km >= 0 else None
    lc = phi.coefficients("s")[phi.degree("s")]
    if mono is not None and len(lc) == 1 and phi.degree("s") > 0:
        # reduce N modulo phi first; lc is a monomial so the scaling is harmless
        r = pseudo_remainder(N, phi, "s")
        scale_power = max(0, N.degree("s") - phi.degree("s") + 1)
        G = r - lc**scale_power * mono * lvar
    else:
        if km < 0:
            N = N.shift("m", -km)
            km = 0
        G = N - MPoly.var(ELIM_VARS, "m", km) * lvar
    G, _ = G.clear_denominators()
    R = resultant(phi, G, "s")
    if R.is_zero():
        raise EliminationError(f"resultant vanishes identically; common factor with {rr.phi}")
    R = R.integer_primitive().to_bilaurent("m", "l")
    Rn = primitive_in_l(R)
    ahat, lpow = strip_factor(Rn, BiLaurent.parse("l - 1"))
    ahat = ahat.normalize()
    a = squarefree_part(ahat) if ahat.deg_l() > 0 or ahat.deg_m() > 0 else ahat
    return EliminationResult(a.normalize(), ahat, R.normalize(), rr, lpow)


def a_polynomial(P: Presentation) -> BiLaurent:
    """Square-free eigenvalue-curve polynomial with the ``l - 1`` factor removed."""
    return eliminate(P).a_poly


def ahat_polynomial(P: Presentation) -> BiLaurent:
    """Like :func:`a_polynomial` but keeps the multiplicities produced by the
    resultant (the degree of the chart curve over each eigenvalue factor)."""
    return eliminate(P).ahat


# ---------------------------------------------------------------------------
# numeric checks


def _poly_in_s(phi: MPoly, m: complex) -> np.ndarray:
    coeffs = phi.coefficients("s")
    d = max(coeffs)
    return np.array([complex(coeffs[k](m, 0)) if k in coeffs else 0j for k in range(d, -1, -1)])


def chart_points(rr: RileyResult, m: complex) -> list[complex]:
    """Numeric ``s`` with ``phi(m, s) = 0``."""
    c = _poly_in_s(rr.phi, m)
    c = np.trim_zeros(c, "f")
    if len(c) < 2:
        return []
    return list(np.roots(c))


def lift_residuals(P: Presentation, count: int = 20, seed: int = 0,
                   result: EliminationResult | None = None) -> list[float]:
    """Pick random points on the output curve and lift them to chart
    representations; returns the worst residual per point.

    The residual of a lift ``(m, s)`` is the sum of ``|phi(m, s)|``, the
    distance of the longitude eigenvalue from ``l``, the relator defect
    ``|rho(r) - I|`` and the lower-left longitude entry.
    """
    res = result or eliminate(P)
    A = res.a_poly
    if A.deg_l() == 0:
        return []
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = cmath.rect(rng.uniform(0.6, 1.6), rng.uniform(0, 2 * cmath.pi))
        poly_l = [complex(sum(c * m**i for (i, j), c in A.items() if j == k)) for k in range(A.deg_l(), -1, -1)]
        ls = np.roots(poly_l)
        l0 = complex(ls[rng.randrange(len(ls))])
        best = None
        for s in chart_points(res.riley, m):
            assign = numeric_assignment(P, m, s)
            lam = eval_word(P.longitude, assign)
            rel = max((eval_word(r, assign) - Mat2(1, 0, 0, 1)).norm() for r in P.relators)
            val = abs(complex(res.riley.phi(m, s))) + abs(lam.a - l0) + rel + abs(lam.c)
            if best is None or val < best:
                best = val
        out.append(best if best is not None else float("inf"))
    return out


def alexander_polynomial(P: Presentation) -> IntPoly1:
    """Alexander polynomial of a one-relator two-generator knot presentation via
    Fox calculus, normalized to a polynomial with nonzero constant term and
    positive leading coefficient."""
    if len(P.generators) != 2 or len(P.relators) != 1:
        raise EliminationError("need a 2-generator 1-relator presentation")
    r = P.relators[0]
    g = P.generators[1]
    # abelianize every generator to t; Fox derivative with respect to g
    terms: dict[int, int] = {}
    prefix = 0
    for name, e in r:
        if name == g:
            if e > 0:
                terms[prefix] = terms.get(prefix, 0) + 1
            else:
                terms[prefix - 1] = terms.get(prefix - 1, 0) - 1
        prefix += e
    lo = min(terms)
    poly = IntPoly1({k - lo: c for k, c in terms.items()})
    return poly.strip_t().primitive() if poly else poly


def longitude_commutes(P: Presentation, samples: int = 50, seed: int = 0) -> float:
    """Largest ``|[rho(lambda), rho(mu)]|`` over random numeric chart points on ``phi = 0``."""
    rr = riley_polynomial(P)
    rng = random.Random(seed)
    worst = 0.0
    if not rr.irreducible_locus:
        return worst
    done = 0
    while done < samples:
        m = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * cmath.pi))
        for s in chart_points(rr, m):
            assign = numeric_assignment(P, m, s)
            lam = eval_word(P.longitude, assign)
            mu = eval_word(P.meridian, assign)
            worst = max(worst, (lam * mu - mu * lam).norm())
            done += 1
    return worst
