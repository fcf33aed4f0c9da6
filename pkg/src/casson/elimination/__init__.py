"""Words, SL(2) evaluation and A-polynomials by elimination."""

from .riley import (
    EliminationError,
    EliminationResult,
    RileyResult,
    a_polynomial,
    ahat_polynomial,
    alexander_polynomial,
    chart_assignment,
    eliminate,
    lift_residuals,
    longitude_commutes,
    riley_chart,
    riley_polynomial,
)
from .sl2 import GaussianRational, Mat2, commutator, eval_word
from .words import Presentation, Word, parse_word, two_bridge_presentation

__all__ = [
    "EliminationError", "EliminationResult", "GaussianRational", "Mat2", "Presentation",
    "RileyResult", "Word", "a_polynomial", "ahat_polynomial", "alexander_polynomial",
    "chart_assignment", "commutator", "eliminate", "eval_word", "lift_residuals",
    "longitude_commutes", "parse_word", "riley_chart", "riley_polynomial",
    "two_bridge_presentation",
]
