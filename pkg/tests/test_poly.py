"""Exact polynomial layer, checked against sympy."""

import cmath
import random

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from casson.poly import (
    BiLaurent,
    IntPoly1,
    MPoly,
    RootConfig,
    RootFindingError,
    coeff_slice,
    deg_l,
    deg_m,
    gcd1,
    is_squarefree,
    mul,
    normalize,
    resultant,
    roots,
    squarefree_decomposition,
    squarefree_part,
    substitute_surgery,
)
from casson.poly.univariate import squarefree_part as squarefree_part1
from casson.surgery import Slope

from _oracle import from_sympy, l, m, t, to_sympy, to_sympy1

P = BiLaurent.parse

small = st.integers(-5, 5)
coef = st.integers(-9, 9).filter(bool)
bilaurents = st.dictionaries(st.tuples(small, small), coef, min_size=1, max_size=6).map(BiLaurent)
intpolys = st.dictionaries(st.integers(0, 8), coef, min_size=1, max_size=5).map(IntPoly1)
slopes = st.tuples(st.integers(-6, 6), st.integers(1, 7)).filter(lambda s: sp.igcd(*s) == 1)


# -- examples -----------------------------------------------------------


@pytest.mark.parametrize("src, expected", [
    ("2*m^2*l - 2*m*l^-1", "m*l^2 - 1"),
    ("l*m^6 + 1", "l*m^6 + 1"),
    ("-(l - 1)", "l - 1"),
])
def test_normalize_examples(src, expected):
    assert normalize(P(src)) == P(expected)


def test_normalize_zero_rejected():
    with pytest.raises(ValueError, match="cannot normalize zero"):
        normalize(BiLaurent())


@pytest.mark.parametrize("a, b, expected", [
    ("l*m^6 + 1", "l*m^6 + 1", "l^2*m^12 + 2*l*m^6 + 1"),
    ("l*m^6 + 1", "1", "l*m^6 + 1"),
    ("m - 1", "l - 1", "m*l - m - l + 1"),
])
def test_mul_examples(a, b, expected):
    assert mul(P(a), P(b)) == P(expected)


@pytest.mark.parametrize("src, dm", [("l*m^6 + 1", 6), ("l - 1", 0), ("m^4*l^2 + 3*m - 7", 4)])
def test_deg_m(src, dm):
    assert deg_m(P(src)) == dm


def test_deg_l_and_zero():
    assert deg_l(P("m^4*l^2 + 3*m - 7")) == 2
    with pytest.raises(ValueError):
        deg_m(BiLaurent())


@pytest.mark.parametrize("i, expected", [(6, IntPoly1({1: 1})), (0, IntPoly1({0: 1})), (3, IntPoly1())])
def test_coeff_slice(i, expected):
    assert coeff_slice(P("l*m^6 + 1"), i) == expected


def test_coeff_slice_out_of_range():
    with pytest.raises(IndexError):
        coeff_slice(P("l*m^6 + 1"), 7)


def test_substitute_trefoil_one_fifth():
    # l m^6 + 1 -> t^-1 t^30 + 1 = t^29 + 1; already a polynomial
    poly, d = substitute_surgery(P("l*m^6 + 1"), Slope(1, 5))
    assert poly == IntPoly1({29: 1, 0: 1})
    assert d == 0


@pytest.mark.parametrize("src, slope, expected, d", [
    ("l - 1", (1, 1), IntPoly1({0: 1, 1: -1}), 1),
    ("m - 1", (0, 1), IntPoly1({1: 1, 0: -1}), 0),
])
def test_substitute_examples(src, slope, expected, d):
    poly, dd = substitute_surgery(P(src), Slope(*slope))
    assert poly == expected
    assert dd == d


def test_gcd_examples():
    a = IntPoly1({2: 1, 1: -1, 0: 1})
    assert gcd1(a, IntPoly1({6: 1, 0: -1})) == a
    assert gcd1(a, IntPoly1({3: 1, 0: -1})) == IntPoly1({0: 1})


def test_roots_quadratic():
    rs = roots(IntPoly1({2: 1, 1: -2, 0: 2}))
    assert sorted(mult for _, mult in rs) == [1, 1]
    got = sorted((round(z.real, 10), round(z.imag, 10)) for z, _ in rs)
    assert got == [(1.0, -1.0), (1.0, 1.0)]


def test_roots_nonconvergence_carries_partial():
    with pytest.raises(RootFindingError) as exc:
        roots(IntPoly1({9: 1, 4: 3, 0: -7}), RootConfig(maxiter=1, tol=1e-300))
    assert exc.value.partial


def test_roots_degree_zero_rejected():
    with pytest.raises(ValueError):
        roots(IntPoly1({0: 3}))


def test_resultant_example():
    ms = ("m", "s")
    mm, ss = MPoly.gens(ms)
    assert resultant(mm * ss - 1, ss**2 - mm, "s") == 1 - mm**3


def test_json_roundtrip():
    A = P("l^2*m^12 + 2*l*m^6 + 1")
    assert BiLaurent.from_json(A.to_json()) == A
    assert A.to_json()[0][0] == "1" or isinstance(A.to_json()[0][0], str)
    d = IntPoly1({2: 1, 1: -3, 0: 1})
    assert IntPoly1.from_json(d.to_json()) == d


def test_parse_errors():
    for bad in ["", "m +", "x*m", "m^(1/2)", "(m+1)^-1", "2^m", "(1 + m)^3000"]:
        with pytest.raises(ValueError):
            P(bad)


def test_big_coefficients_exact():
    A = P("123456789012345678901234567890*m + 1") ** 3
    assert to_sympy(A) == sp.expand((123456789012345678901234567890 * m + 1) ** 3)


# -- properties ---------------------------------------------------------


@given(bilaurents, bilaurents, bilaurents)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(bilaurents, bilaurents)
def test_mul_matches_sympy(a, b):
    assert from_sympy(to_sympy(a) * to_sympy(b)) == a * b


@given(bilaurents)
def test_normalize_idempotent_and_normal(a):
    n = normalize(a)
    assert normalize(n) == n
    assert n.is_normal()
    assert n.min_m() == 0 and n.min_l() == 0 and n.content() == 1


@given(bilaurents, st.integers(0, 2**32))
def test_normalize_preserves_torus_zero_locus(a, seed):
    # the two differ by a unit on the torus: the ratio is a fixed monomial
    n = normalize(a)
    rng = random.Random(seed)
    ratios = []
    for _ in range(5):
        z = cmath.rect(rng.uniform(0.5, 2), rng.uniform(0, 6.28))
        w = cmath.rect(rng.uniform(0.5, 2), rng.uniform(0, 6.28))
        va, vn = a(z, w), n(z, w)
        assert (abs(va) < 1e-12) == (abs(vn) < 1e-12) or min(abs(va), abs(vn)) > 1e-14
        if abs(vn) > 1e-9:
            k = a.min_m() - n.min_m()
            j = a.min_l() - n.min_l()
            ratios.append(va / (vn * z**k * w**j))
    for r in ratios:
        assert abs(abs(r) - a.content()) < 1e-6 * a.content()


@given(bilaurents, slopes)
def test_substitution_span(a, slope):
    s = Slope.of(*slope)
    poly, d = substitute_surgery(a, s)
    expr = sp.expand(to_sympy(a).subs({m: t**s.q, l: t ** (-s.p)}) * t**d)
    if expr == 0:
        assert poly.is_zero()
        return
    # t^d A(t^q, t^-p) is a polynomial with nonzero constant term; that fixes d
    assert to_sympy1(poly) == expr
    assert poly.coeff(0) != 0
    # degree + d is the t-span's upper end, computed term by term
    exps = {}
    for (i, j), c in a.items():
        e = s.q * i - s.p * j
        exps[e] = exps.get(e, 0) + c
    live = [e for e, c in exps.items() if c]
    assert poly.degree == max(live) - min(live)
    assert d == -min(live)


@given(intpolys, intpolys)
def test_gcd_matches_sympy(a, b):
    g = gcd1(a, b)
    ref = sp.Poly(sp.gcd(to_sympy1(a), to_sympy1(b)), t)
    assert sp.Poly(to_sympy1(g), t).monic() == ref.monic()


@given(intpolys, st.integers(1, 3), intpolys)
def test_squarefree_decomposition(a, k, b):
    assume(a.degree > 0)
    f = a**k * b
    parts = squarefree_decomposition(f)
    prod = IntPoly1({0: 1})
    for p, e in parts:
        prod = prod * p**e
    # equal up to a constant factor
    ratio = sp.cancel(to_sympy1(f) / to_sympy1(prod))
    assert ratio.is_number
    sq = squarefree_part1(f)
    assert sp.Poly(sp.gcd(to_sympy1(sq), sp.diff(to_sympy1(sq), t)), t).degree() == 0


@given(intpolys)
def test_roots_multiplicities_sum_to_degree(a):
    assume(a.degree >= 1)
    rs = roots(a)
    assert sum(k for _, k in rs) == a.degree
    scale = sum(abs(c) for c in a.terms.values())
    for z, _ in rs:
        assert abs(a(z)) <= 1e-7 * scale * max(1.0, abs(z)) ** a.degree


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=3), st.lists(st.integers(-3, 3), min_size=2, max_size=3),
       st.integers(-3, 3))
def test_resultant_vanishing_iff_common_root(ca, cb, m0):
    # A(s) = sum ca_k s^k + m, B(s) = sum cb_k s^k: resultant in s at m = m0
    vars2 = ("m", "s")
    mm, ss = MPoly.gens(vars2)
    A = sum((c * ss**k for k, c in enumerate(ca)), mm * 0) + mm
    B = sum((c * ss**k for k, c in enumerate(cb)), mm * 0) + 1
    assume(A.degree("s") >= 1 and B.degree("s") >= 1)
    assume(A.coefficients("s")[A.degree("s")].subs({"m": m0}).constant_value() != 0)
    R = resultant(A, B, "s")
    r0 = R.subs({"m": m0}).constant_value() if not R.is_zero() else 0
    S = sp.symbols("S")
    a0 = sum(c * S**k for k, c in enumerate(ca)) + m0
    b0 = sum(c * S**k for k, c in enumerate(cb)) + 1
    common = sp.Poly(sp.gcd(a0, b0), S).degree() > 0
    assert (r0 == 0) == common


small_bilaurents = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), coef,
                                   min_size=1, max_size=4).map(BiLaurent)


@given(small_bilaurents)
def test_squarefree_bivariate(a):
    assume(not (len(a) == 1))
    sq = squarefree_part((a * a).normalize())
    assert is_squarefree(sq)
    ref = sp.factor_list(to_sympy(normalize(a)))[1]
    # the square-free part has the same irreducible factors (ignoring pure monomials)
    want = sp.Integer(1)
    for f, _ in ref:
        if len(sp.Poly(f, m, l).terms()) > 1:
            want *= f
    assert normalize(from_sympy(want)) == sq
