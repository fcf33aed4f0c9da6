"""Numeric roots of integer polynomials with exact multiplicities.

Multiplicities come from an exact square-free decomposition; each square-free
factor is then solved with Aberth's simultaneous iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .univariate import IntPoly1, squarefree_decomposition


@dataclass(frozen=True)
class RootConfig:
    tol: float = 1e-12
    maxiter: int = 200
    # residual acceptance, relative to sum |a_k| |z|^k
    residual_tol: float = 1e-9


class RootFindingError(RuntimeError):
    """Raised when refinement does not converge; ``partial`` holds the
    current approximations as ``(root, multiplicity)`` pairs."""

    def __init__(self, message: str, partial: list[tuple[complex, int]]):
        super().__init__(message)
        self.partial = partial


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    # coefficients highest degree first; radius from the Cauchy-type bound
    n = len(coeffs) - 1
    a = np.abs(coeffs)
    lead, const = a[0], a[-1]
    r = (const / lead) ** (1.0 / n) if const else 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return r * np.exp(1j * angles)


def _eval_with_derivative(coeffs: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _ratio(coeffs: np.ndarray, rcoeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Newton correction p/p' evaluated stably.

    For |z| > 1 the reversed polynomial is evaluated at 1/z, which keeps the
    Horner sums bounded for high degrees.
    """
    n = len(coeffs) - 1
    out = np.empty_like(z)
    inside = np.abs(z) <= 1
    if inside.any():
        p, dp = _eval_with_derivative(coeffs, z[inside])
        out[inside] = p / dp
    outside = ~inside
    if outside.any():
        w = 1.0 / z[outside]
        # p(z) = z^n r(w),  p'(z) = z^(n-1) (n r(w) - w r'(w))
        r, dr = _eval_with_derivative(rcoeffs, w)
        out[outside] = r / (w * (n * r - w * dr))
    return out


def aberth(coeffs, config: RootConfig = RootConfig()) -> np.ndarray:
    """All roots of a polynomial with distinct roots (coefficients highest first)."""
    c = np.asarray(coeffs, dtype=complex)
    c = np.trim_zeros(c, "f")
    n = len(c) - 1
    if n < 1:
        return np.empty(0, dtype=complex)
    if n == 1:
        return np.array([-c[1] / c[0]])
    c = c / c[0]
    rc = c[::-1]
    z = _initial_guesses(c)
    converged = False
    for _ in range(config.maxiter):
        ratio = _ratio(c, rc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        step = ratio / (1 - ratio * s)
        z = z - step
        if np.all(np.abs(step) <= config.tol * np.maximum(1.0, np.abs(z))):
            converged = True
            break
    if not converged:
        raise RootFindingError(f"Aberth iteration did not converge in {config.maxiter} steps",
                               [(complex(x), 1) for x in z])
    return z


def scaled_residual(p: IntPoly1, z: complex) -> float:
    """``|p(z)| / sum |a_k| |z|^k``."""
    az = abs(z)
    scale = sum(abs(c) * az**e for e, c in p.items())
    return abs(p(complex(z))) / scale if scale else 0.0


def roots(p: IntPoly1, config: RootConfig = RootConfig()) -> list[tuple[complex, int]]:
    """Roots of ``p`` with multiplicities summing to ``deg p``.

    Ordered by multiplicity then argument then modulus so output is
    deterministic.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if p.degree < 1:
        raise ValueError("roots need degree >= 1")
    out: list[tuple[complex, int]] = []
    # t = 0 is exact; the relative residual below is meaningless there
    k0 = p.low_degree
    if k0:
        out.append((0j, k0))
        p = p.strip_t()
        if p.degree == 0:
            return out
    for f, mult in squarefree_decomposition(p):
        coeffs = [float(c) for c in reversed(f.dense())]
        try:
            zs = aberth(coeffs, config)
        except RootFindingError as exc:
            partial = out + [(z, mult) for z, _ in exc.partial]
            raise RootFindingError(str(exc), partial) from None
        for z in zs:
            z = complex(z)
            if scaled_residual(f, z) > config.residual_tol:
                raise RootFindingError(
                    f"root {z} of factor of degree {f.degree} has residual above tolerance",
                    out + [(complex(x), mult) for x in zs])
            out.append((z, mult))
    total = sum(m for _, m in out)
    if total != p.degree + k0:  # pragma: no cover - guarded by the decomposition
        raise RootFindingError(f"multiplicities sum to {total}, expected {p.degree + k0}", out)
    out.sort(key=lambda r: (r[1], round(float(np.angle(r[0])), 12), round(abs(r[0]), 12)))
    return out
