"""Free-group words and finite group presentations."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = tuple[str, int]

_TOKEN = re.compile(r"\s*([A-Za-z][0-9_]*)(?:\^(\S*?))?(?=\s|[A-Za-z]|$)")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {e}")
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; ``letters`` is a tuple of ``(generator, +-1)``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, src: str, generators: Sequence[str] | None = None) -> Word:
        return parse_word(src, generators)

    @classmethod
    def gen(cls, g: str, e: int = 1) -> Word:
        return cls(((g, 1 if e > 0 else -1),) * abs(e))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def reversed(self) -> Word:
        """The same letters read right to left (not the inverse)."""
        return Word(tuple(reversed(self.letters)))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def exponent_sums(self, generators: Sequence[str]) -> tuple[int, ...]:
        sums = dict.fromkeys(generators, 0)
        for g, e in self.letters:
            if g not in sums:
                raise ValueError(f"generator {g!r} not in {list(generators)}")
            sums[g] += e
        return tuple(sums[g] for g in generators)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e > 0 else _invert_name(g) for g, e in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


def _invert_name(g: str) -> str:
    return g[0].upper() + g[1:]


def parse_word(src: str, generators: Sequence[str] | None = None) -> Word:
    """Parse words such as ``"y x Y X"``, ``"yxYX"``, ``"g1 g2^-1"`` or ``"x^3"``.

    A generator is a lowercase letter optionally followed by digits; the
    uppercase form denotes its inverse.  ``^k`` raises to an integer power.
    The identity is written ``1``.
    If ``generators`` is given, any other name is rejected.
    """
    if src is None or not src.strip():
        raise ValueError("empty word")
    if src.strip() == "1":
        return Word()
    allowed = set(generators) if generators is not None else None
    letters: list[Letter] = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word at {src[pos:]!r}")
        name, exp = m.group(1), m.group(2)
        pos = m.end()
        if name[0].isupper():
            g, sign = name[0].lower() + name[1:], -1
        else:
            g, sign = name, 1
        if allowed is not None and g not in allowed:
            raise ValueError(f"unknown generator {g!r}")
        if exp is None:
            k = 1
        else:
            if not re.fullmatch(r"-?\d+", exp):
                raise ValueError(f"malformed exponent {exp!r} on {name!r}")
            k = int(exp)
        k *= sign
        letters.extend([(g, 1 if k > 0 else -1)] * abs(k))
    return Word(tuple(letters))


def _lattice_contains(basis_rows: list[list[int]], v: list[int]) -> bool:
    """Is ``v`` in the integer row span of ``basis_rows``?  (Hermite reduction.)"""
    rows = [list(r) for r in basis_rows if any(r)]
    dim = len(v)
    hnf: list[list[int]] = []
    col = 0
    while rows and col < dim:
        rows = [r for r in rows if any(r)]
        piv = [r for r in rows if r[col]]
        if not piv:
            col += 1
            continue
        # Euclid on the column
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            p = piv[0]
            for r in piv[1:]:
                q = r[col] // p[col]
                for k in range(dim):
                    r[k] -= q * p[k]
            piv = [r for r in piv if r[col]]
        p = piv[0]
        hnf.append(p)
        rows = [r for r in rows if r is not p]
        col += 1
    w = list(v)
    for r in hnf:
        c = next(k for k, x in enumerate(r) if x)
        if w[c] % r[c]:
            return False
        q = w[c] // r[c]
        for k in range(dim):
            w[k] -= q * r[k]
    return not any(w)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    meridian: Word | None = None
    longitude: Word | None = None
    name: str = ""
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        for w in (*self.relators, self.meridian, self.longitude):
            if w is not None and not w.generators() <= set(gens):
                raise ValueError(f"word {w} uses undeclared generators")

    @classmethod
    def from_strings(cls, generators, relators, meridian=None, longitude=None, name="") -> Presentation:
        gens = tuple(generators)
        return cls(
            gens,
            tuple(parse_word(r, gens) for r in relators),
            parse_word(meridian, gens) if meridian is not None else None,
            parse_word(longitude, gens) if longitude is not None else None,
            name,
        )

    def longitude_is_null_homologous(self, word: Word | None = None) -> bool:
        """Whether the word maps to zero in the abelianization of the group.

        For a link group with one generator per component this is exponent
        sum zero in every generator; for a knot group (all generators
        conjugate) it is total exponent sum zero.
        """
        w = self.longitude if word is None else word
        if w is None:
            raise ValueError("no longitude")
        rel = [list(r.exponent_sums(self.generators)) for r in self.relators]
        return _lattice_contains(rel, list(w.exponent_sums(self.generators)))

    def to_dict(self) -> dict:
        out = {"generators": list(self.generators), "relators": [str(r) for r in self.relators]}
        if self.meridian is not None:
            out["meridian"] = str(self.meridian)
        if self.longitude is not None:
            out["longitude"] = str(self.longitude)
        return out

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> Presentation:
        for key in ("generators", "relators"):
            if key not in data:
                raise ValueError(f"presentation is missing {key!r}")
        return cls.from_strings(data["generators"], data["relators"],
                                data.get("meridian"), data.get("longitude"), name)

    @classmethod
    def from_json(cls, text: str) -> Presentation:
        return cls.from_dict(json.loads(text))


def two_bridge_presentation(p: int, q: int, name: str = "") -> Presentation:
    """Presentation of the two-bridge knot ``K(p/q)`` (``p`` odd, ``0 < q < p``).

    Generators ``a, b`` are meridians; the relator is ``w a w^-1 b^-1`` with
    ``w = a^e1 b^e2 a^e3 ...`` (``p - 1`` letters, ``e_i = (-1)^floor(i q / p)``)
    and the preferred longitude commuting with ``a`` is ``w* w a^(-2 sigma)``
    where ``w*`` is ``w`` read backwards and ``sigma`` is the sum of the ``e_i``.
    """
    if p % 2 == 0 or p < 1 or not 0 < q < p:
        raise ValueError("need odd p and 0 < q < p")
    from math import gcd
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    # the sign pattern needs odd q; q - p names the same knot
    qq = q if q % 2 else q - p
    eps = [1 if (i * qq) // p % 2 == 0 else -1 for i in range(1, p)]
    letters = [("a" if i % 2 == 0 else "b", e) for i, e in enumerate(eps)]
    w = Word(tuple(letters))
    a, b = Word.gen("a"), Word.gen("b")
    relator = w * a * w.inverse() * b.inverse()
    sigma = sum(eps)
    longitude = w.reversed() * w * a ** (-2 * sigma)
    return Presentation(("a", "b"), (relator,), a, longitude, name or f"K({p}/{q})")
