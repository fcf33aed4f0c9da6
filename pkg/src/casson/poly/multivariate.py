"""Sparse multivariate Laurent polynomials with rational coefficients.

Used for symbolic representation matrices (Riley charts, the Whitehead chart
polynomial) and for resultant-based elimination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

from .bivariate import BiLaurent


def _clean_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class MPoly:
    """Polynomial over Q in named variables; negative exponents are allowed.

    ``terms`` maps exponent tuples (aligned with ``variables``) to ``int`` or
    ``Fraction`` coefficients.  Two MPolys combine only if their variable
    tuples agree; use :meth:`with_variables` to embed.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Rational] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[tuple, Rational] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.variables}")
            if c:
                v = clean.get(e, 0) + c
                if v:
                    clean[e] = _clean_coeff(v)
                else:
                    clean.pop(e, None)
        self._terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def var(cls, variables: Sequence[str], name: str, power: int = 1) -> MPoly:
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = power
        return cls(variables, {tuple(e): 1})

    @classmethod
    def const(cls, variables: Sequence[str], c: Rational) -> MPoly:
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple[MPoly, ...]:
        return tuple(cls.var(variables, v) for v in variables)

    @classmethod
    def from_bilaurent(cls, a: BiLaurent, variables: Sequence[str] = ("m", "l")) -> MPoly:
        if len(variables) != 2:
            raise ValueError("BiLaurent embeds into exactly two variables")
        return cls(variables, {e: c for e, c in a.items()})

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> dict[tuple, Rational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self.variables}") from None

    def degree(self, name: str) -> int:
        """Largest exponent of ``name``; -1 for zero."""
        k = self.index(name)
        return max((e[k] for e in self._terms), default=-1)

    def min_degree(self, name: str) -> int:
        k = self.index(name)
        return min((e[k] for e in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get((0,) * len(self.variables), 0)

    def leading(self) -> tuple[tuple, Rational]:
        e = max(self._terms)
        return e, self._terms[e]

    def free_of(self, name: str) -> bool:
        k = self.index(name)
        return all(e[k] == 0 for e in self._terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.variables, other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.variables, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                out[k] = out.get(k, 0) + c1 * c2
        return MPoly(self.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a scalar or by a monomial (always exact for Laurent polys)."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return MPoly(self.variables, {e: Fraction(c) / other for e, c in self._terms.items()})
        other = self._coerce(other)
        if len(other) == 1:
            (e2, c2), = other.items()
            return MPoly(self.variables, {
                tuple(a - b for a, b in zip(e1, e2)): Fraction(c1) / c2 for e1, c1 in self._terms.items()
            })
        q = exact_divide(self, other)
        if q is None:
            raise ValueError("inexact polynomial division")
        return q

    def __pow__(self, k: int):
        if k < 0:
            if len(self) != 1:
                raise ValueError("negative power of a non-monomial")
            return MPoly.const(self.variables, 1) / (self ** (-k))
        result = MPoly.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, name: str, k: int) -> MPoly:
        """Multiply by ``name**k``."""
        idx = self.index(name)
        out = {}
        for e, c in self._terms.items():
            e2 = list(e)
            e2[idx] += k
            out[tuple(e2)] = c
        return MPoly(self.variables, out)

    def derivative(self, name: str) -> MPoly:
        k = self.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return MPoly(self.variables, out)

    def coefficients(self, name: str) -> dict[int, MPoly]:
        """Coefficients with respect to ``name``; each keeps the full variable
        tuple with a zero exponent in ``name``."""
        k = self.index(name)
        out: dict[int, dict[tuple, Rational]] = {}
        for e, c in self._terms.items():
            e2 = list(e)
            d = e2[k]
            e2[k] = 0
            out.setdefault(d, {})[tuple(e2)] = c
        return {d: MPoly(self.variables, t) for d, t in out.items()}

    def subs(self, values: Mapping[str, object]) -> MPoly:
        """Substitute exact scalars or MPolys (same variable tuple) for variables.

        Substituted variables remain in the tuple with exponent zero.
        """
        idx = {self.index(n): v for n, v in values.items()}
        result = MPoly(self.variables)
        for e, c in self._terms.items():
            term = MPoly(self.variables, {tuple(0 if i in idx else x for i, x in enumerate(e)): c})
            for i, v in idx.items():
                if e[i]:
                    term = term * (v ** e[i] if isinstance(v, MPoly) else MPoly.const(self.variables, Fraction(v) ** e[i]))
            result = result + term
        return result

    def __call__(self, *args, **kwargs):
        """Numeric evaluation at all variables (positional or by name)."""
        if args:
            if len(args) != len(self.variables):
                raise ValueError("wrong number of arguments")
            vals = args
        else:
            vals = [kwargs[v] for v in self.variables]
        total = 0
        for e, c in self._terms.items():
            term = c if not isinstance(c, Fraction) else c.numerator / c.denominator
            for x, k in zip(vals, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def evaluate_exact(self, values: Mapping[str, object]):
        """Exact evaluation over a ring supporting ``+``, ``*`` and integer powers."""
        total = 0
        for e, c in self._terms.items():
            term = c
            for name, k in zip(self.variables, e):
                if k:
                    term = term * values[name] ** k
            total = total + term
        return total

    def with_variables(self, variables: Sequence[str]) -> MPoly:
        """Re-express over a superset (or reordering) of the variables."""
        variables = tuple(variables)
        pos = []
        for v in self.variables:
            if v not in variables:
                if self.degree(v) > 0 or self.min_degree(v) < 0:
                    raise ValueError(f"variable {v!r} is used and not in {variables}")
                pos.append(None)
            else:
                pos.append(variables.index(v))
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * len(variables)
            for k, p in zip(e, pos):
                if p is not None:
                    e2[p] = k
            out[tuple(e2)] = c
        return MPoly(variables, out)

    def clear_denominators(self) -> tuple[MPoly, dict[str, int]]:
        """Multiply by the monomial making every exponent nonnegative and
        minimal; returns the polynomial and the applied shift per variable."""
        if not self._terms:
            return self, {v: 0 for v in self.variables}
        mins = [min(e[k] for e in self._terms) for k in range(len(self.variables))]
        out = {tuple(a - b for a, b in zip(e, mins)): c for e, c in self._terms.items()}
        return MPoly(self.variables, out), {v: -m for v, m in zip(self.variables, mins)}

    def integer_primitive(self) -> MPoly:
        """Scale to coprime integer coefficients with positive leading term."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            d = c.denominator if isinstance(c, Fraction) else 1
            den = den * d // math.gcd(den, d)
        ints = {e: int(c * den) for e, c in self._terms.items()}
        g = 0
        for c in ints.values():
            g = math.gcd(g, c)
        if ints[max(ints)] < 0:
            g = -g
        return MPoly(self.variables, {e: c // g for e, c in ints.items()})

    def to_bilaurent(self, x: str, y: str) -> BiLaurent:
        """Convert an integer-coefficient polynomial in (at most) ``x`` and ``y``."""
        ix, iy = self.index(x), self.index(y)
        out = {}
        for e, c in self._terms.items():
            if any(k for i, k in enumerate(e) if i not in (ix, iy)):
                raise ValueError(f"polynomial depends on variables other than {x}, {y}")
            if isinstance(c, Fraction):
                raise ValueError("non-integer coefficient; call integer_primitive first")
            out[(e[ix], e[iy])] = c
        return BiLaurent(out)

    def __repr__(self):
        return f"MPoly({self.variables}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


def exact_divide(a: MPoly, b: MPoly) -> MPoly | None:
    """Exact quotient of polynomials (nonnegative exponents) or ``None``.

    Lex-order division; for an exact divisor every leading term of the running
    remainder is divisible by the leading term of ``b``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.variables != b.variables:
        raise ValueError("variable mismatch")
    if a.is_zero():
        return a
    be, bc = b.leading()
    rem = dict(a._terms)
    quo: dict[tuple, Rational] = {}
    bterms = list(b._terms.items())
    while rem:
        e = max(rem)
        if any(x < y for x, y in zip(e, be)):
            return None
        qe = tuple(x - y for x, y in zip(e, be))
        qc = Fraction(rem[e], bc) if isinstance(rem[e], int) and isinstance(bc, int) else Fraction(rem[e]) / bc
        qc = _clean_coeff(qc)
        quo[qe] = qc
        for f, fc in bterms:
            k = tuple(x + y for x, y in zip(f, qe))
            v = rem.get(k, 0) - qc * fc
            if v:
                rem[k] = _clean_coeff(v)
            else:
                rem.pop(k, None)
    return MPoly(a.variables, quo)


def _det_bareiss(mat: list[list[MPoly]], zero: MPoly) -> MPoly:
    """Fraction-free determinant; every division is exact."""
    n = len(mat)
    if n == 0:
        return zero + 1
    a = [row[:] for row in mat]
    sign = 1
    prev = zero + 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev.is_constant():
                    a[i][j] = num / prev.constant_value() if prev.constant_value() != 1 else num
                else:
                    q = exact_divide(num, prev)
                    if q is None:
                        raise ArithmeticError("Bareiss step not exact; inputs must be polynomials")
                    a[i][j] = q
            a[i][k] = zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(a: MPoly, b: MPoly, name: str) -> list[list[MPoly]]:
    da, db = a.degree(name), b.degree(name)
    ca, cb = a.coefficients(name), b.coefficients(name)
    zero = MPoly(a.variables)
    n = da + db
    rows = []
    for i in range(db):
        row = [zero] * n
        for k in range(da + 1):
            row[i + k] = ca.get(da - k, zero)
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for k in range(db + 1):
            row[i + k] = cb.get(db - k, zero)
        rows.append(row)
    return rows


def resultant(a: MPoly, b: MPoly, name: str) -> MPoly:
    """Sylvester resultant eliminating ``name``.

    Inputs must be polynomial (nonnegative exponents) in every variable; the
    result keeps the variable tuple with ``name`` absent from every term.
    """
    if a.variables != b.variables:
        raise ValueError("variable mismatch")
    for p in (a, b):
        if p.is_zero():
            raise ValueError("resultant with the zero polynomial")
        if any(x < 0 for e in p._terms for x in e):
            raise ValueError("resultant needs polynomial inputs; clear denominators first")
    da, db = a.degree(name), b.degree(name)
    if da == 0 and db == 0:
        return MPoly.const(a.variables, 1)
    if da == 0:
        return a**db
    if db == 0:
        return b**da
    return _det_bareiss(sylvester_matrix(a, b, name), MPoly(a.variables))


def pseudo_remainder(a: MPoly, b: MPoly, name: str) -> MPoly:
    """Pseudo-remainder: ``lc(b)**delta * a`` reduced modulo ``b`` in ``name``,
    with ``delta = deg a - deg b + 1``."""
    db = b.degree(name)
    cb = b.coefficients(name)
    lc = cb[db]
    x = MPoly.var(a.variables, name)
    delta = max(a.degree(name) - db + 1, 0)
    r = a
    steps = 0
    while not r.is_zero() and r.degree(name) >= db:
        dr = r.degree(name)
        top = r.coefficients(name)[dr]
        r = r * lc - top * b * x ** (dr - db)
        steps += 1
    # standard normalization: exactly lc(b)**delta * a = q * b + r
    return r * lc ** (delta - steps)
