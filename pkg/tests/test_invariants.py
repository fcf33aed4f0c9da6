"""Knot-level invariants and the bundled database."""

import itertools
import json
import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from casson.invariants import (
    DatabaseError,
    KnotRecord,
    SeminormQuery,
    admissible_condition_ii,
    alexander_twisted_double,
    connected_sum,
    default_db_path,
    dumps_db,
    eigenvalue_seminorm,
    find_knot,
    lambda_prime,
    lambda_prime_asymptotic,
    load_db,
    normalize_alexander,
    parse_records,
    save_db,
)
from casson.poly import BiLaurent, IntPoly1

from _oracle import t, to_sympy1

P = BiLaurent.parse
DB = load_db()
TREFOIL = find_knot(DB, "trefoil")
FIG8 = find_knot(DB, "figure-8")
UNKNOT = find_knot(DB, "unknot")


def test_lambda_examples():
    assert lambda_prime(TREFOIL) == 3
    assert lambda_prime(UNKNOT) == 0
    # published value for the untwisted double of the trefoil
    assert lambda_prime(find_knot(DB, "untwisted-double-trefoil")) == 0
    assert isinstance(lambda_prime(TREFOIL), Fraction)


def test_asymptotic_trefoil():
    est = lambda_prime_asymptotic(TREFOIL, 1, 100)
    assert est.estimates[-1] == Fraction(599, 200)
    assert est.extrapolated == 3
    est2 = lambda_prime_asymptotic(TREFOIL, 2, 101)
    assert est2.extrapolated == 3
    assert est2.params.c != est.params.c


def test_asymptotic_unknot_is_zero():
    est = lambda_prime_asymptotic(UNKNOT, 1, 10)
    assert set(est.estimates) == {0}
    assert est.extrapolated == 0


def test_asymptotic_errors():
    with pytest.raises(ValueError):
        lambda_prime_asymptotic(TREFOIL, 1, 0)
    # the 0/1 curve l - 1 divides this A-hat
    K = KnotRecord("k", P("(l - 1)*(l*m^2 + 1)"), IntPoly1({0: 1}))
    with pytest.raises(ValueError, match="divides"):
        lambda_prime_asymptotic(K, 0, 5)


@pytest.mark.parametrize("K", [k for k in DB if k.ahat.deg_m() > 0], ids=lambda k: k.name)
@pytest.mark.parametrize("p", [1, 2, 3])
def test_asymptotic_agrees_with_degree(K, p):
    est = lambda_prime_asymptotic(K, p, 60)
    assert est.extrapolated == lambda_prime(K)
    assert abs(est.estimates[-1] - lambda_prime(K)) <= Fraction(abs(est.params.c), 2 * est.qs[-1])


def test_connected_sum_examples():
    tt = connected_sum(TREFOIL, TREFOIL)
    assert tt.ahat == P("l^2*m^12 + 2*l*m^6 + 1")
    assert lambda_prime(tt) == 6
    assert connected_sum(FIG8, UNKNOT).ahat == FIG8.ahat
    assert connected_sum(TREFOIL, FIG8).ahat.deg_m() == 6 + FIG8.ahat.deg_m()
    assert tt.name == "trefoil # trefoil"


def test_lambda_additive_all_pairs():
    for K1, K2 in itertools.product(DB, repeat=2):
        assert lambda_prime(connected_sum(K1, K2)) == lambda_prime(K1) + lambda_prime(K2)


@pytest.mark.parametrize("n", range(-5, 6))
def test_twisted_double_alexander(n):
    d = alexander_twisted_double(n)
    expected = sp.Poly(n * t**2 + (1 - 2 * n) * t + n, t)
    if n == 0:
        assert d == IntPoly1({0: 1})
    else:
        assert sp.Poly(to_sympy1(d), t) == expected
    assert d(1) == 1


def test_twisted_double_normalized_examples():
    assert alexander_twisted_double(1) == IntPoly1({2: 1, 1: -1, 0: 1})
    assert alexander_twisted_double(-1) == IntPoly1({2: -1, 1: 3, 0: -1})
    assert normalize_alexander(alexander_twisted_double(-1)) == IntPoly1({2: 1, 1: -3, 0: 1})


def test_admissible_examples():
    d = IntPoly1({2: 1, 1: -1, 0: 1})
    r = admissible_condition_ii(d, 12)
    assert not r.ok and r.p_prime == 6 and r.witness == d
    assert admissible_condition_ii(d, 5).ok
    assert all(admissible_condition_ii(IntPoly1({0: 1}), p).ok for p in (1, 2, 7, 30))
    with pytest.raises(ValueError):
        admissible_condition_ii(d, 0)
    with pytest.raises(ValueError):
        admissible_condition_ii(IntPoly1(), 3)


def test_admissible_against_sympy():
    for K in DB:
        for p in range(1, 40):
            pp = p if p % 2 else p // 2
            g = sp.gcd(to_sympy1(K.alexander), t**pp - 1)
            assert admissible_condition_ii(K.alexander, p).ok == (sp.Poly(g, t).degree() == 0)


@pytest.mark.parametrize("K", DB, ids=lambda k: k.name)
def test_admissible_monotone_under_divisibility(K):
    bad = {p for p in range(1, 61) if not admissible_condition_ii(K.alexander, p).ok}
    for p in bad:
        pp = p if p % 2 else p // 2
        for k in range(2, 61):
            q = pp * k
            # odd multiples of p' keep p' = q; even ones halve: use the odd-p route
            if q % 2 and q <= 60:
                assert q in bad


# -- seminorm --------------------------------------------------------------


def test_seminorm_examples():
    C = TREFOIL.ahat
    assert eigenvalue_seminorm(SeminormQuery(C, (0, 0))).value == 0
    one = eigenvalue_seminorm(SeminormQuery(C, (1, 0))).value
    two = eigenvalue_seminorm(SeminormQuery(C, (2, 0))).value
    assert one > 0 and two == 2 * one
    r = eigenvalue_seminorm(SeminormQuery(P("l - 1"), (0, 1)))
    assert r.value == 0 and r.degenerate
    with pytest.raises(ValueError):
        SeminormQuery(BiLaurent(), (1, 0))


def test_seminorm_trefoil_values():
    # on l = -m^-6 the trace of m^a l^b is m^(a-6b) + m^(6b-a): 2|a - 6b| solutions
    C = TREFOIL.ahat
    for a, b in [(1, 0), (0, 1), (1, 1), (2, 3), (-5, 1)]:
        assert eigenvalue_seminorm(SeminormQuery(C, (a, b))).value == 2 * abs(a - 6 * b)


xis = st.tuples(st.integers(-3, 3), st.integers(-2, 2))


@pytest.mark.parametrize("K", [TREFOIL, FIG8], ids=lambda k: k.name)
def test_seminorm_homogeneous_and_symmetric(K):
    for xi in [(1, 0), (0, 1), (1, 1), (2, -1)]:
        base = eigenvalue_seminorm(SeminormQuery(K.ahat, xi)).value
        for k in range(-3, 4):
            v = eigenvalue_seminorm(SeminormQuery(K.ahat, (k * xi[0], k * xi[1]))).value
            assert v == abs(k) * base


@given(xis, xis)
def test_seminorm_triangle(x, y):
    C = FIG8.ahat
    n = lambda xi: eigenvalue_seminorm(SeminormQuery(C, xi)).value  # noqa: E731
    assert n((x[0] + y[0], x[1] + y[1])) <= n(x) + n(y)


# -- database ------------------------------------------------------------------


def test_db_roundtrip_bytes(tmp_path):
    text = default_db_path().read_text(encoding="utf-8")
    assert dumps_db(DB) == text
    out = tmp_path / "db.json"
    save_db(out, DB)
    assert out.read_text(encoding="utf-8") == text
    assert [r.name for r in load_db(out)] == [r.name for r in DB]


def test_db_empty_file(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    assert load_db(p) == []


def test_db_rejects_bad_alexander():
    bad = [{"name": "x", "ahat": [["1", 0, 0]], "alexander": [["1", 1], ["1", 0]], "provenance": ""}]
    with pytest.raises(DatabaseError) as exc:
        parse_records(bad)
    assert "t = 1" in exc.value.errors[0]
    with pytest.raises(ValueError):
        KnotRecord("x", P("1"), IntPoly1({1: 1, 0: 1}))


def test_db_reports_every_problem():
    recs = [
        {"name": "a", "ahat": [["2", 0, 0], ["2", 1, 0]], "alexander": [["1", 0]], "provenance": ""},
        {"name": "b", "ahat": [["1", 0, 0]], "alexander": [["3", 0]], "provenance": ""},
        {"name": "b", "ahat": [["1", 0, 0]], "alexander": [["1", 0]], "provenance": ""},
    ]
    with pytest.raises(DatabaseError) as exc:
        parse_records(recs)
    msgs = "\n".join(exc.value.errors)
    assert "normal form" in msgs and "t = 1" in msgs and "duplicate" in msgs


def test_db_schema_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps([{"name": "", "ahat": [[1, 0, 0]], "alexander": []}]))
    with pytest.raises(DatabaseError):
        load_db(p)
    p.write_text("{not json")
    with pytest.raises(DatabaseError):
        load_db(p)


def test_db_env_override(tmp_path, monkeypatch):
    p = tmp_path / "db.json"
    save_db(p, [TREFOIL])
    monkeypatch.setenv("CASSON_DB", str(p))
    assert [r.name for r in load_db()] == ["trefoil"]


def test_db_provenance_present():
    for K in DB:
        assert K.provenance
        if K.presentation is None:
            assert "external, unverified" in K.provenance or K.name == "unknot"


def test_find_knot_unknown():
    with pytest.raises(KeyError):
        find_knot(DB, "8_20")
