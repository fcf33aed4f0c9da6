"""Words, SL(2) evaluation, Riley charts and A-polynomials."""

import json
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from casson.elimination import (
    EliminationError,
    GaussianRational,
    Mat2,
    Presentation,
    Word,
    a_polynomial,
    ahat_polynomial,
    alexander_polynomial,
    eliminate,
    eval_word,
    lift_residuals,
    longitude_commutes,
    parse_word,
    riley_chart,
    riley_polynomial,
    two_bridge_presentation,
)
from casson.elimination.riley import chart_points, numeric_assignment
from casson.invariants import find_knot, load_db
from casson.poly import BiLaurent, IntPoly1, MPoly, is_squarefree

from _oracle import a_polynomial_oracle

WIRTINGER_TREFOIL = Presentation.from_strings(
    ["g1", "g2"], ["g1 g2 g1 G2 G1 G2"], "g1", "g2 g1 g1 g2 G1^4", "trefoil-wirtinger")
UNKNOT = Presentation.from_strings(["g1", "g2"], ["g1 G2"], "g1", "1", "unknot")

FIXTURES = [WIRTINGER_TREFOIL] + [two_bridge_presentation(p, q) for p, q in
                                  [(3, 1), (5, 3), (5, 1), (7, 2), (7, 3), (9, 2)]]


# -- words ----------------------------------------------------------------


def test_parse_examples():
    w = parse_word("y x Y X y X Y x")
    assert len(w) == 8
    assert parse_word("x X") == Word()
    assert parse_word("x^3") == Word((("x", 1),) * 3)
    assert parse_word("y x y^-1 x^-1") == parse_word("yxYX")


@pytest.mark.parametrize("bad", ["", "   ", "x^", "x^a", "x^1.5", "x z", "3x"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_word(bad, ["x", "y"])


def test_word_printing():
    assert str(Word()) == "1"
    assert str(parse_word("g1 G2^2")) == "g1 G2 G2"


letters = st.lists(st.tuples(st.sampled_from("xy"), st.sampled_from([1, -1])), max_size=20)


@given(letters)
def test_parse_print_roundtrip(ls):
    w = Word(tuple(ls))
    assert parse_word(str(w)) == w
    assert parse_word(str(parse_word(str(w)))) == w


@given(letters)
def test_free_reduction(ls):
    w = Word(tuple(ls))
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(w.letters, w.letters[1:]))
    assert (w * w.inverse()) == Word()


# -- SL(2) evaluation -----------------------------------------------------


def _rand_sl2(rng):
    a, b, c = (Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3))
    if a == 0:
        a = Fraction(1)
    return Mat2(a, b, c, (1 + b * c) / a)


def test_eval_basics():
    M = Mat2(Fraction(2), Fraction(1), Fraction(3), Fraction(2))
    assign = {"x": M}
    assert eval_word(Word(), assign) == Mat2.identity_like(Fraction(1))
    assert eval_word(parse_word("x"), assign) == M
    assert eval_word(parse_word("x X"), assign).is_zero() is False
    assert eval_word(Word((("x", 1), ("x", -1))), assign) == Mat2.identity_like(Fraction(1))


def test_eval_domain_mismatch():
    with pytest.raises(TypeError):
        eval_word(parse_word("x y"), {"x": Mat2(1.0j, 0j, 0j, -1j), "y": riley_chart()[0]})
    with pytest.raises(KeyError):
        eval_word(parse_word("x z"), {"x": Mat2(1, 0, 0, 1)})


def test_eval_gaussian():
    i = GaussianRational(0, 1)
    M = Mat2(i, GaussianRational(0), GaussianRational(0), -i)
    assert eval_word(parse_word("x^4"), {"x": M}) == Mat2.identity_like(GaussianRational(1))


@given(letters, letters, st.integers(0, 2**31))
def test_eval_is_homomorphism(l1, l2, seed):
    rng = random.Random(seed)
    assign = {"x": _rand_sl2(rng), "y": _rand_sl2(rng)}
    w1, w2 = Word(tuple(l1)), Word(tuple(l2))
    prod = eval_word(w1 * w2, assign)
    assert prod == eval_word(w1, assign) * eval_word(w2, assign)
    assert prod.det() == 1


# -- presentations ---------------------------------------------------------


@pytest.mark.parametrize("P", FIXTURES, ids=lambda P: P.name)
def test_longitude_null_homologous(P):
    assert P.longitude_is_null_homologous()


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation.from_strings(["a", "b"], ["a c"])
    with pytest.raises(ValueError):
        Presentation.from_strings(["a", "a"], ["a"])
    data = {"generators": ["g1", "g2"], "relators": ["g1 g2 g1 G2 G1 G2"], "meridian": "g1"}
    assert Presentation.from_json(json.dumps(data)).to_dict() == data


def test_two_bridge_rejects():
    for p, q in [(4, 1), (5, 5), (9, 3), (5, 0)]:
        with pytest.raises(ValueError):
            two_bridge_presentation(p, q)


# -- Riley charts ------------------------------------------------------------


def test_riley_chart_shape():
    A, B = riley_chart()
    m, s = MPoly.gens(("m", "s"))
    assert (A.a, A.b, A.c) == (m, m * 0 + 1, m * 0)
    assert (B.a, B.b, B.c) == (m, m * 0, s)
    # s = 0 is the reducible (upper triangular) specialization
    assert B.c.subs({"s": 0}).is_zero()


def test_riley_trefoil_degree_one():
    rr = riley_polynomial(WIRTINGER_TREFOIL)
    assert rr.s_degree == 1
    # oracle: the chart curve is s = 1 - m^2 - m^-2 up to a unit
    m = sp.symbols("m")
    s_val = 1 - m**2 - m**-2
    phi = rr.phi
    val = sum(c * m**e[0] * s_val**e[1] for e, c in phi.items())
    assert sp.simplify(val) == 0


def test_riley_figure8_degree_two():
    assert riley_polynomial(two_bridge_presentation(5, 3)).s_degree == 2


def test_riley_unknot_no_irreducible_locus():
    rr = riley_polynomial(UNKNOT)
    assert not rr.irreducible_locus


def test_riley_parabolic_point():
    # m = 1 on the trefoil chart gives a parabolic representation
    rr = riley_polynomial(WIRTINGER_TREFOIL)
    (s0,) = chart_points(rr, 1.0)
    assign = numeric_assignment(WIRTINGER_TREFOIL, 1.0, s0)
    assert (eval_word(WIRTINGER_TREFOIL.relators[0], assign) - Mat2(1, 0, 0, 1)).norm() < 1e-12
    assert abs(assign["g1"].trace() - 2) < 1e-15
    assert abs(s0) > 0.5


def test_riley_rejects_three_generators():
    P = Presentation.from_strings(["a", "b", "c"], ["a b c"], "a", "1")
    with pytest.raises(EliminationError):
        riley_polynomial(P)


# -- A-polynomials -----------------------------------------------------------


def test_trefoil_wirtinger():
    A = a_polynomial(WIRTINGER_TREFOIL)
    assert A == BiLaurent.parse("l*m^6 + 1")
    assert A.deg_m() == 6


def test_unknot_apoly():
    assert a_polynomial(UNKNOT) == BiLaurent.constant(1)


@pytest.mark.parametrize("P", FIXTURES[:5], ids=lambda P: P.name)
def test_apoly_matches_sympy_oracle(P):
    assert a_polynomial(P) == a_polynomial_oracle(P)


@pytest.mark.parametrize("P", FIXTURES, ids=lambda P: P.name)
def test_apoly_properties(P):
    res = eliminate(P)
    A = res.a_poly
    assert A.is_normal()
    assert is_squarefree(A)
    assert A.deg_l() > 0
    # no l - 1 factor
    from casson.poly import exact_quotient
    assert exact_quotient(A, BiLaurent.parse("l - 1")) is None
    # the ahat has the same support factors
    from casson.poly import squarefree_part
    assert squarefree_part(res.ahat) == A


@pytest.mark.parametrize("P", FIXTURES, ids=lambda P: P.name)
def test_lifts(P):
    assert max(lift_residuals(P, count=20, seed=3)) < 1e-8


@pytest.mark.parametrize("P", FIXTURES, ids=lambda P: P.name)
def test_longitude_commutes_with_meridian(P):
    assert longitude_commutes(P, samples=50, seed=1) < 1e-9


def test_torus_knot_multiplicity():
    # T(2,5): the chart curve has two components over Q(sqrt 5), both mapping to l m^10 + 1
    P = two_bridge_presentation(5, 1)
    assert a_polynomial(P) == BiLaurent.parse("l*m^10 + 1")
    assert ahat_polynomial(P) == BiLaurent.parse("l*m^10 + 1") ** 2


@pytest.mark.parametrize("p, q, expected", [
    (3, 1, IntPoly1({2: 1, 1: -1, 0: 1})),
    (5, 3, IntPoly1({2: 1, 1: -3, 0: 1})),
    (5, 1, IntPoly1({4: 1, 3: -1, 2: 1, 1: -1, 0: 1})),
    (7, 2, IntPoly1({2: 2, 1: -3, 0: 2})),
])
def test_alexander_by_fox_calculus(p, q, expected):
    assert alexander_polynomial(two_bridge_presentation(p, q)) == expected


def test_db_entries_reproduced_by_elimination():
    for rec in load_db():
        if rec.presentation is None or "external" in rec.provenance:
            continue
        assert ahat_polynomial(rec.presentation) == rec.ahat, rec.name
        assert alexander_polynomial(rec.presentation) == rec.alexander, rec.name


def test_db_trefoil_matches_wirtinger():
    assert find_knot(load_db(), "trefoil").ahat == a_polynomial(WIRTINGER_TREFOIL)
