"""2x2 matrices over interchangeable scalar domains and word evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex
from typing import Mapping

from ..poly.multivariate import MPoly
from .words import Word


class GaussianRational:
    """Exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _c(x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        raise TypeError(f"cannot combine GaussianRational with {type(x).__name__}")

    def __add__(self, o):
        o = self._c(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = self._c(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


def domain_of(x) -> str:
    if isinstance(x, MPoly):
        return "mpoly" + ":" + ",".join(x.variables)
    if isinstance(x, GaussianRational):
        return "gaussian"
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return "rational"
    if isinstance(x, Complex):
        return "complex"
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def _is_zero(x) -> bool:
    if isinstance(x, MPoly):
        return x.is_zero()
    return x == 0


@dataclass(frozen=True)
class Mat2:
    """Matrix ``[[a, b], [c, d]]``; inverse uses the adjugate, valid for SL(2)."""

    a: object
    b: object
    c: object
    d: object

    @classmethod
    def identity_like(cls, x) -> Mat2:
        one = x * 0 + 1
        zero = x * 0
        return cls(one, zero, zero, one)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def domain(self) -> str:
        doms = {domain_of(e) for e in self.entries()}
        # plain integers inside an exact domain are harmless
        if len(doms) > 1 and "rational" in doms:
            doms.discard("rational")
        if len(doms) != 1:
            raise TypeError(f"matrix mixes scalar domains {sorted(doms)}")
        return doms.pop()

    def __mul__(self, o: Mat2) -> Mat2:
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __sub__(self, o: Mat2) -> Mat2:
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __add__(self, o: Mat2) -> Mat2:
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def scale(self, k) -> Mat2:
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k)

    def inverse(self) -> Mat2:
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse_general(self) -> Mat2:
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, k: int) -> Mat2:
        base = self if k >= 0 else self.inverse()
        out = Mat2.identity_like(self.a)
        for _ in range(abs(k)):
            out = out * base
        return out

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def is_zero(self) -> bool:
        return all(_is_zero(e) for e in self.entries())

    def __eq__(self, o):
        if not isinstance(o, Mat2):
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(tuple(complex(e) if isinstance(e, complex) else e for e in self.entries()))

    def norm(self) -> float:
        """Frobenius norm of a numeric matrix."""
        return sum(abs(complex(e)) ** 2 for e in self.entries()) ** 0.5

    def to_complex(self) -> Mat2:
        return Mat2(*(complex(e) for e in self.entries()))

    def map(self, fn) -> Mat2:
        return Mat2(*(fn(e) for e in self.entries()))

    def tolist(self):
        return [[self.a, self.b], [self.c, self.d]]


def commutator(x: Mat2, y: Mat2) -> Mat2:
    return x * y * x.inverse() * y.inverse()


def eval_word(w: Word, assignment: Mapping[str, Mat2]) -> Mat2:
    """Product of the assigned matrices (inverses for negative letters), left to right."""
    if not assignment:
        raise ValueError("empty assignment")
    missing = w.generators() - set(assignment)
    if missing:
        raise KeyError(f"unassigned generators {sorted(missing)}")
    doms = set()
    for g, mat in assignment.items():
        d = mat.domain()
        doms.add(d)
    if len(doms) > 1:
        if doms <= {"rational", "gaussian"}:
            pass
        else:
            raise TypeError(f"assignment mixes scalar domains {sorted(doms)}")
    inv = {g: mat.inverse() for g, mat in assignment.items()}
    some = next(iter(assignment.values()))
    out = Mat2.identity_like(some.a)
    for g, e in w:
        out = out * (assignment[g] if e > 0 else inv[g])
    return out
