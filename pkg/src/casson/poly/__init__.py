"""Exact polynomial arithmetic: univariate, bivariate Laurent, multivariate."""

from .bivariate import (
    BiLaurent,
    bigcd,
    divides,
    exact_quotient,
    is_squarefree,
    squarefree_part,
    strip_factor,
    substitute_surgery,
)
from .multivariate import MPoly, exact_divide, pseudo_remainder, resultant
from .roots import RootConfig, RootFindingError, aberth, roots, scaled_residual
from .univariate import IntPoly1, exact_div, gcd1, squarefree_decomposition


def normalize(a: BiLaurent) -> BiLaurent:
    return a.normalize()


def mul(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    return a * b


def deg_m(a: BiLaurent) -> int:
    return a.deg_m()


def deg_l(a: BiLaurent) -> int:
    return a.deg_l()


def coeff_slice(a: BiLaurent, i: int) -> IntPoly1:
    return a.coeff_slice(i)


__all__ = [
    "BiLaurent", "IntPoly1", "MPoly", "RootConfig", "RootFindingError",
    "aberth", "bigcd", "coeff_slice", "deg_l", "deg_m", "divides", "exact_div",
    "exact_divide", "exact_quotient", "gcd1", "is_squarefree", "mul", "normalize",
    "pseudo_remainder", "resultant", "roots", "scaled_residual",
    "squarefree_decomposition", "squarefree_part", "strip_factor", "substitute_surgery",
]
