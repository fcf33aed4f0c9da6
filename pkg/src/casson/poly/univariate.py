"""Sparse univariate polynomials with integer coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping


class IntPoly1:
    """Integer polynomial in one variable ``t``, stored as ``{exponent: coefficient}``.

    Instances are immutable; zero coefficients are never stored, so the zero
    polynomial is the empty map.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e, c = int(e), int(c)
            if e < 0:
                raise ValueError(f"negative exponent {e} in IntPoly1")
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> IntPoly1:
        """Build from a dense list, lowest degree first."""
        return cls({i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> IntPoly1:
        return cls({e: c})

    @classmethod
    def constant(cls, c: int) -> IntPoly1:
        return cls({0: c})

    # -- basic accessors --------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return max(self._terms) if self._terms else -1

    @property
    def low_degree(self) -> int:
        return min(self._terms) if self._terms else -1

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    @property
    def leading_coefficient(self) -> int:
        return self._terms[self.degree] if self._terms else 0

    def dense(self) -> list[int]:
        """Coefficients lowest degree first."""
        return [self._terms.get(i, 0) for i in range(self.degree + 1)]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly1.constant(other)
        if not isinstance(other, IntPoly1):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> IntPoly1:
        if isinstance(other, IntPoly1):
            return other
        if isinstance(other, int):
            return IntPoly1.constant(other)
        raise TypeError(f"cannot combine IntPoly1 with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly1(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly1({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntPoly1(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPoly1.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> IntPoly1:
        """Multiply by ``t**k`` (``k`` may be negative if it stays polynomial)."""
        return IntPoly1({e + k: c for e, c in self._terms.items()})

    def derivative(self) -> IntPoly1:
        return IntPoly1({e - 1: e * c for e, c in self._terms.items() if e})

    def __call__(self, x):
        """Evaluate by Horner's rule; works for int, Fraction, complex, numpy."""
        if not self._terms:
            return 0 * x
        acc = 0 * x
        for i in range(self.degree, -1, -1):
            acc = acc * x + self._terms.get(i, 0)
        return acc

    def primitive(self) -> IntPoly1:
        """Divide by the content and make the leading coefficient positive."""
        if not self._terms:
            return self
        g = self.content()
        if self.leading_coefficient < 0:
            g = -g
        return IntPoly1({e: c // g for e, c in self._terms.items()})

    def strip_t(self) -> IntPoly1:
        """Remove the largest power of ``t`` dividing the polynomial."""
        return self.shift(-self.low_degree) if self._terms else self

    def __repr__(self):
        return f"IntPoly1({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                mono = str(abs(c))
            else:
                var = "t" if e == 1 else f"t^{e}"
                mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list[list]:
        return [[str(self._terms[e]), e] for e in sorted(self._terms, reverse=True)]

    @classmethod
    def from_json(cls, data) -> IntPoly1:
        terms: dict[int, int] = {}
        for entry in data:
            if len(entry) != 2:
                raise ValueError(f"bad IntPoly1 term {entry!r}")
            c, e = entry
            e = int(e)
            terms[e] = terms.get(e, 0) + int(c)
        return cls(terms)


# ---------------------------------------------------------------------------
# exact division and gcd over Q[t]


def _qdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Dense long division over Q, coefficients lowest degree first."""
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    if len(a) - 1 < db:
        return [], a
    quo = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quo[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    rem = a[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def divmod_q(a: IntPoly1, b: IntPoly1) -> tuple[list[Fraction], list[Fraction]]:
    return _qdivmod([Fraction(c) for c in a.dense()], [Fraction(c) for c in b.dense()])


def exact_div(a: IntPoly1, b: IntPoly1) -> IntPoly1:
    """Return ``a / b``; raises ``ValueError`` if it is not an integer polynomial."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    quo, rem = divmod_q(a, b)
    if rem or any(c.denominator != 1 for c in quo):
        raise ValueError(f"{b} does not divide {a} over Z")
    return IntPoly1({i: int(c) for i, c in enumerate(quo)})


def divides(b: IntPoly1, a: IntPoly1) -> bool:
    try:
        exact_div(a, b)
    except ValueError:
        return False
    return True


def _to_int_primitive(coeffs: list[Fraction]) -> IntPoly1:
    if not coeffs:
        return IntPoly1()
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPoly1({i: int(c * den) for i, c in enumerate(coeffs)}).primitive()


# A 62-bit prime for the modular square-free fast path.
_PRIME = 4611686018427387847


def _gcd_mod(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); dense lists lowest degree first."""
    a = [c % p for c in a]
    b = [c % p for c in b]

    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            c = a[-1] * inv % p
            shift = len(a) - 1 - db
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
            trim(a)
        a, b = b, a
    return len(a) - 1


def gcd1(a: IntPoly1, b: IntPoly1) -> IntPoly1:
    """Greatest common divisor over Q, returned as a primitive integer polynomial
    with positive leading coefficient (so ``gcd1(a, b) == 1`` means coprime)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.degree == 0 or b.degree == 0:
        return IntPoly1.constant(1)
    if (a.leading_coefficient % _PRIME and b.leading_coefficient % _PRIME
            and _gcd_mod(a.dense(), b.dense(), _PRIME) == 0):
        # the modular gcd degree bounds the rational one from above
        return IntPoly1.constant(1)
    x, y = a.primitive().dense(), b.primitive().dense()
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_prem(x, y)
        x, y = y, _int_primitive(r)
    return IntPoly1({i: c for i, c in enumerate(x)}).primitive()


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder over Z, dense lists lowest degree first."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        top = r[-1]
        g = math.gcd(top, lc)
        mul_r, mul_b = lc // g, top // g
        r = [c * mul_r for c in r]
        for i, bc in enumerate(b):
            r[k + i] -= mul_b * bc
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_primitive(r: list[int]) -> list[int]:
    if not r:
        return r
    g = 0
    for c in r:
        g = math.gcd(g, c)
        if g == 1:
            return r
    return [c // g for c in r]


def squarefree_decomposition(a: IntPoly1) -> list[tuple[IntPoly1, int]]:
    """Yun's algorithm: ``a = c * prod f_i**i`` with the ``f_i`` square-free and
    pairwise coprime.  Returns the non-constant ``(f_i, i)`` pairs."""
    if a.degree < 1:
        return []
    A = [Fraction(c) for c in a.dense()]
    dA = [Fraction(c) for c in a.derivative().dense()]
    g = gcd1(a, a.derivative())
    if g.degree == 0:
        return [(a.primitive(), 1)]
    G = [Fraction(c) for c in g.dense()]
    B, _ = _qdivmod(A, G)
    C, _ = _qdivmod(dA, G)
    D = _qsub(C, _qderiv(B))
    out: list[tuple[IntPoly1, int]] = []
    i = 1
    while len(B) > 1:
        H = _qgcd(B, D)
        if len(H) > 1:
            out.append((_to_int_primitive(H), i))
        B, _ = _qdivmod(B, H)
        C, _ = _qdivmod(D, H) if D else ([], [])
        D = _qsub(C, _qderiv(B))
        i += 1
    return out


def _qderiv(a: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(a)][1:]


def _qsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return [Fraction(c) for c in out]


def _qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not b:
        lead = a[-1]
        return [c / lead for c in a]
    x, y = list(a), list(b)
    while y:
        _, r = _qdivmod(x, y)
        x, y = y, r
    lead = x[-1]
    return [c / lead for c in x]


def squarefree_part(a: IntPoly1) -> IntPoly1:
    out = IntPoly1.constant(1)
    for f, _ in squarefree_decomposition(a):
        out = out * f
    return out
