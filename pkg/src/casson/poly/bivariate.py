"""Integer Laurent polynomials in the eigenvalue variables ``(m, l)``."""

from __future__ import annotations

import ast
import math
from typing import Iterable, Mapping

from .univariate import IntPoly1, exact_div, gcd1

Exp = tuple[int, int]


class BiLaurent:
    """Sparse Laurent polynomial ``sum c * m**i * l**j`` with integer ``c``.

    The map ``{(i, j): c}`` never stores zeros.  Monomials are units in the
    Laurent ring, so "normal form" fixes the representative: minimal exponents
    0 in both variables, content 1 and a positive lex-leading coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | None = None):
        clean: dict[Exp, int] = {}
        for (i, j), c in (terms or {}).items():
            c = int(c)
            if c:
                key = (int(i), int(j))
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> BiLaurent:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> BiLaurent:
        return cls({(i, j): c})

    @classmethod
    def m(cls) -> BiLaurent:
        return cls({(1, 0): 1})

    @classmethod
    def l(cls) -> BiLaurent:  # noqa: E743
        return cls({(0, 1): 1})

    @classmethod
    def parse(cls, src: str, variables: tuple[str, str] = ("m", "l")) -> BiLaurent:
        """Parse text such as ``"l*m^6 + 1"`` or ``"(m - 1)*(l - 1)"``."""
        return _parse(src, variables)

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> dict[Exp, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def deg_m(self) -> int:
        self._require_nonzero()
        return max(i for i, _ in self._terms)

    def deg_l(self) -> int:
        self._require_nonzero()
        return max(j for _, j in self._terms)

    def min_m(self) -> int:
        self._require_nonzero()
        return min(i for i, _ in self._terms)

    def min_l(self) -> int:
        self._require_nonzero()
        return min(j for _, j in self._terms)

    def _require_nonzero(self):
        if not self._terms:
            raise ValueError("operation undefined for the zero polynomial")

    def leading(self) -> tuple[Exp, int]:
        """Lex-leading term (m-exponent first)."""
        self._require_nonzero()
        e = max(self._terms)
        return e, self._terms[e]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def is_polynomial(self) -> bool:
        return all(i >= 0 and j >= 0 for i, j in self._terms)

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> BiLaurent:
        if isinstance(other, BiLaurent):
            return other
        if isinstance(other, int):
            return BiLaurent.constant(other)
        raise TypeError(f"cannot combine BiLaurent with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return BiLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exp, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a non-monomial")
        result, base = BiLaurent.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, di: int, dj: int) -> BiLaurent:
        """Multiply by the monomial ``m**di * l**dj``."""
        return BiLaurent({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def diff_m(self) -> BiLaurent:
        return BiLaurent({(i - 1, j): i * c for (i, j), c in self._terms.items() if i})

    def diff_l(self) -> BiLaurent:
        return BiLaurent({(i, j - 1): j * c for (i, j), c in self._terms.items() if j})

    def swap(self) -> BiLaurent:
        """Exchange the roles of the two variables."""
        return BiLaurent({(j, i): c for (i, j), c in self._terms.items()})

    def __call__(self, m, l):  # noqa: E741
        """Evaluate at a point; accepts Python scalars, Fractions or numpy arrays."""
        total = 0 * m * l
        for (i, j), c in self._terms.items():
            total = total + c * m**i * l**j
        return total

    def abs_sum(self, m, l):  # noqa: E741
        """Sum of the absolute values of the terms at ``(m, l)``; a residual scale."""
        return sum(abs(c) * abs(m) ** i * abs(l) ** j for (i, j), c in self._terms.items())

    # -- normal form ------------------------------------------------------
    def normalize(self) -> BiLaurent:
        if not self._terms:
            raise ValueError("cannot normalize zero")
        mi, mj = self.min_m(), self.min_l()
        g = self.content()
        if self.leading()[1] < 0:
            g = -g
        return BiLaurent({(i - mi, j - mj): c // g for (i, j), c in self._terms.items()})

    def is_normal(self) -> bool:
        return bool(self._terms) and self == self.normalize()

    def coeff_slice(self, i: int) -> IntPoly1:
        """The polynomial ``alpha_i(l)`` with ``A = sum_i m**i * alpha_i(l)``."""
        if not self._terms:
            raise ValueError("coefficient slice of the zero polynomial")
        if not self.is_polynomial():
            raise ValueError("coefficient slices need nonnegative exponents; normalize first")
        if not 0 <= i <= self.deg_m():
            raise IndexError(f"slice index {i} outside 0..{self.deg_m()}")
        return IntPoly1({j: c for (a, j), c in self._terms.items() if a == i})

    def l_coefficients(self) -> dict[int, IntPoly1]:
        """View as a polynomial in ``l`` with coefficients in ``Z[m]``."""
        out: dict[int, dict[int, int]] = {}
        for (i, j), c in self._terms.items():
            out.setdefault(j, {})[i] = c
        return {j: IntPoly1(d) for j, d in out.items()}

    def __repr__(self):
        return f"BiLaurent({self})"

    def __str__(self):
        return self.format()

    def format(self, variables: tuple[str, str] = ("m", "l")) -> str:
        if not self._terms:
            return "0"
        vm, vl = variables
        pieces = []
        for (i, j) in sorted(self._terms, reverse=True):
            c = self._terms[(i, j)]
            factors = []
            for v, e in ((vl, j), (vm, i)):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list[list]:
        return [[str(self._terms[e]), e[0], e[1]] for e in sorted(self._terms, reverse=True)]

    @classmethod
    def from_json(cls, data: Iterable) -> BiLaurent:
        terms: dict[Exp, int] = {}
        for entry in data:
            if len(entry) != 3:
                raise ValueError(f"bad BiLaurent term {entry!r}")
            c, i, j = entry
            key = (int(i), int(j))
            terms[key] = terms.get(key, 0) + int(c)
        return cls(terms)


# ---------------------------------------------------------------------------
# parsing


# expanding (1 + m)^k is dense; larger powers of sums are refused
MAX_PARSE_POWER = 2000


def _parse(src: str, variables: tuple[str, str]) -> BiLaurent:
    if not src or not src.strip():
        raise ValueError("empty polynomial expression")
    shown = src if len(src) <= 80 else src[:77] + "..."
    try:
        tree = ast.parse(src.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {shown!r}: {exc.msg}") from None
    except (RecursionError, MemoryError):
        raise ValueError("polynomial expression is nested too deeply") from None
    vm, vl = variables

    def walk(node) -> BiLaurent:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return BiLaurent.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id == vm:
                return BiLaurent.monomial(1, 0)
            if node.id == vl:
                return BiLaurent.monomial(0, 1)
            raise ValueError(f"unknown variable {node.id!r} (expected {vm} or {vl})")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                exp_node = node.right
                sign = 1
                if isinstance(exp_node, ast.UnaryOp) and isinstance(exp_node.op, ast.USub):
                    sign, exp_node = -1, exp_node.operand
                if not (isinstance(exp_node, ast.Constant) and isinstance(exp_node.value, int)):
                    raise ValueError("exponents must be integer literals")
                k = sign * exp_node.value
                if k >= 0:
                    if len(base) > 1 and k > MAX_PARSE_POWER:
                        raise ValueError(f"exponent {k} on a non-monomial exceeds {MAX_PARSE_POWER}")
                    return base**k
                if len(base) != 1:
                    raise ValueError("negative powers are only allowed on monomials")
                ((i, j), c), = base.items()
                if abs(c) != 1:
                    raise ValueError("negative powers are only allowed on unit monomials")
                return BiLaurent.monomial(i * k, j * k, c if k % 2 else 1)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise ValueError(f"unsupported syntax in polynomial {shown!r}")

    try:
        return walk(tree)
    except RecursionError:
        raise ValueError("polynomial expression is nested too deeply") from None


# ---------------------------------------------------------------------------
# exact division, gcd, square-free part


def _poly_divmod(a: dict[Exp, int], b: dict[Exp, int]):
    """Lex division of polynomials over Q; returns (quotient, remainder) with
    Fraction-free early exit when a coefficient fails to divide."""
    from fractions import Fraction

    lead_e = max(b)
    lead_c = b[lead_e]
    rem = {e: Fraction(c) for e, c in a.items()}
    quo: dict[Exp, Fraction] = {}
    out_rem: dict[Exp, Fraction] = {}
    while rem:
        e = max(rem)
        c = rem[e]
        if e[0] >= lead_e[0] and e[1] >= lead_e[1]:
            qe = (e[0] - lead_e[0], e[1] - lead_e[1])
            qc = c / lead_c
            quo[qe] = quo.get(qe, 0) + qc
            for (i, j), bc in b.items():
                k = (i + qe[0], j + qe[1])
                v = rem.get(k, 0) - qc * bc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        else:
            out_rem[e] = c
            del rem[e]
    return quo, out_rem


def exact_quotient(a: BiLaurent, b: BiLaurent) -> BiLaurent | None:
    """``a / b`` in the Laurent ring ``Z[m^±1, l^±1]``, or ``None`` if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    sa = (a.min_m(), a.min_l())
    sb = (b.min_m(), b.min_l())
    ap = a.shift(-sa[0], -sa[1])
    bp = b.shift(-sb[0], -sb[1])
    quo, rem = _poly_divmod(ap._terms, bp._terms)
    if rem or any(c.denominator != 1 for c in quo.values()):
        return None
    return BiLaurent({e: int(c) for e, c in quo.items()}).shift(sa[0] - sb[0], sa[1] - sb[1])


def divides(b: BiLaurent, a: BiLaurent) -> bool:
    return exact_quotient(a, b) is not None


def _zgcd(a: IntPoly1, b: IntPoly1) -> IntPoly1:
    """gcd in Z[m], including the integer content."""
    if a.is_zero():
        return b.primitive() * b.content() if b else b
    if b.is_zero():
        return a.primitive() * a.content()
    return gcd1(a, b) * math.gcd(a.content(), b.content())


def _lpoly(a: BiLaurent) -> list[IntPoly1]:
    coeffs = a.l_coefficients()
    n = max(coeffs) if coeffs else -1
    return [coeffs.get(j, IntPoly1()) for j in range(n + 1)]


def _from_lpoly(p: list[IntPoly1]) -> BiLaurent:
    out = {}
    for j, c in enumerate(p):
        for i, v in c.items():
            out[(i, j)] = v
    return BiLaurent(out)


def _lcontent(p: list[IntPoly1]) -> IntPoly1:
    g = IntPoly1()
    for c in p:
        if c:
            g = _zgcd(g, c)
            if g.degree == 0 and abs(g.leading_coefficient) == 1:
                break
    return g


def _lprimitive(p: list[IntPoly1]) -> list[IntPoly1]:
    g = _lcontent(p)
    if g.degree == 0 and g.leading_coefficient == 1:
        out = p
    else:
        out = [exact_div(c, g) if c else c for c in p]
    if out and out[-1].leading_coefficient < 0:
        out = [-c for c in out]
    return out


def _prem(a: list[IntPoly1], b: list[IntPoly1]) -> list[IntPoly1]:
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        top = r[-1]
        r = [c * lc for c in r]
        for i, bc in enumerate(b):
            r[i + k] = r[i + k] - top * bc
        while r and r[-1].is_zero():
            r.pop()
    return r


def content_in_m(a: BiLaurent) -> IntPoly1:
    """gcd in ``Z[m]`` of the ``l``-coefficients of the normal form of ``a``."""
    return _lcontent(_lpoly(a.normalize()))


def primitive_in_l(a: BiLaurent) -> BiLaurent:
    """Normal form of ``a`` with every factor free of ``l`` removed."""
    return _from_lpoly(_lprimitive(_lpoly(a.normalize()))).normalize()


def bigcd(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    """Greatest common divisor in the Laurent ring, returned in normal form.

    Recursive primitive PRS in ``l`` over ``Z[m]``.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.normalize()
    if b.is_zero():
        return a.normalize()
    pa, pb = _lpoly(a.normalize()), _lpoly(b.normalize())
    c = _zgcd(_lcontent(pa), _lcontent(pb))
    pa, pb = _lprimitive(pa), _lprimitive(pb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb and len(pb) > 1:
        r = _prem(pa, pb)
        pa, pb = pb, (_lprimitive(r) if r else [])
    if pb:  # nonzero constant in l: primitive parts are coprime
        g = [IntPoly1.constant(1)]
    else:
        g = pa
    return (_from_lpoly(g) * _from_lpoly([c])).normalize()


def squarefree_part(a: BiLaurent) -> BiLaurent:
    """Normal form of ``a`` with every repeated factor reduced to multiplicity one."""
    a = a.normalize()
    dm, dl = a.diff_m(), a.diff_l()
    if dm.is_zero() and dl.is_zero():
        return a
    g = bigcd(a, bigcd(dm, dl) if dm and dl else (dm or dl))
    q = exact_quotient(a, g)
    assert q is not None
    return q.normalize()


def is_squarefree(a: BiLaurent) -> bool:
    a = a.normalize()
    dm, dl = a.diff_m(), a.diff_l()
    if dm.is_zero() and dl.is_zero():
        return True
    g = bigcd(a, bigcd(dm, dl) if dm and dl else (dm or dl))
    return len(g) == 1


def strip_factor(a: BiLaurent, f: BiLaurent) -> tuple[BiLaurent, int]:
    """Divide out ``f`` as often as possible; returns (quotient, count)."""
    if len(f) <= 1:
        raise ValueError("cannot strip a unit (monomial) factor in the Laurent ring")
    count = 0
    while True:
        q = exact_quotient(a, f)
        if q is None:
            return a, count
        a, count = q, count + 1


def substitute_surgery(a: BiLaurent, slope) -> tuple[IntPoly1, int]:
    """Return ``(t**d * a(t**q, t**-p), d)`` with ``d`` the minimal exponent
    making the result a polynomial; the result has nonzero constant term."""
    p, q = slope
    if a.is_zero():
        raise ValueError("substitution into the zero polynomial")
    out: dict[int, int] = {}
    for (i, j), c in a.items():
        e = q * i - p * j
        out[e] = out.get(e, 0) + c
    out = {e: c for e, c in out.items() if c}
    if not out:
        return IntPoly1(), 0
    d = -min(out)
    return IntPoly1({e + d: c for e, c in out.items()}), d
