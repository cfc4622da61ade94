"""Legendre polynomial primitives.

Evaluation by the standard forward three-term recurrence, the closed-form
norms, the derivative re-expansion P_j' = sum_{m} (2m+1) P_m over m = j-1,
j-3, ..., and Gauss-Legendre rule generation for the quadrature oracle.
All arithmetic is 64-bit floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def eval_legendre(degree: int, x):
    """Evaluate P_degree(x) on [-1, 1].

    Parameters
    ----------
    degree : int
        Polynomial degree, >= 0.
    x : float or ndarray
        Evaluation point(s).

    Returns
    -------
    float or ndarray
        P_degree(x), same shape as x.

    Uses the forward recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1},
    stable on [-1, 1] for every degree needed here.
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    xa = np.asarray(x, dtype=float)
    pm1 = np.ones_like(xa)
    if degree == 0:
        return pm1 if isinstance(x, np.ndarray) else float(pm1)
    p = xa.copy()
    for k in range(1, degree):
        p, pm1 = ((2 * k + 1) * xa * p - k * pm1) / (k + 1), p
    return p if isinstance(x, np.ndarray) else float(p)


def legendre_table(n_max: int, x: np.ndarray) -> np.ndarray:
    """All of P_0 ... P_n_max at once.

    Returns an (n_max+1, len(x)) array; row j holds P_j at the sample
    points.  One recurrence pass, so cheaper than eval_legendre in a loop.
    """
    x = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1, x.size))
    table[0] = 1.0
    if n_max >= 1:
        table[1] = x
    for k in range(1, n_max):
        table[k + 1] = ((2 * k + 1) * x * table[k] - k * table[k - 1]) / (k + 1)
    return table


def legendre_norm_sq(degree: int) -> float:
    """||P_degree||^2 on [-1, 1], which is 2/(2*degree+1)."""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    return 2.0 / (2 * degree + 1)


@dataclass(frozen=True)
class DerivExpansion:
    """P'_j expanded in the Legendre basis.

    terms lists (m, 2m+1) for m = j-1, j-3, ... down to 0 or 1; empty for
    j = 0.  The coefficients are exact integers stored as floats.
    """

    source_degree: int
    terms: tuple[tuple[int, float], ...]

    def evaluate(self, x):
        """Value of P'_source_degree at x via the expansion."""
        xa = np.asarray(x, dtype=float)
        total = np.zeros_like(xa)
        for m, coeff in self.terms:
            total = total + coeff * eval_legendre(m, xa)
        return total if isinstance(x, np.ndarray) else float(total)


def derivative_expansion(degree: int) -> DerivExpansion:
    """Legendre expansion of P'_degree: coefficients 2m+1 on degrees m =
    degree-1, degree-3, ... >= 0."""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    terms = tuple(
        (m, float(2 * m + 1)) for m in range(degree - 1, -1, -2)
    )
    return DerivExpansion(source_degree=degree, terms=terms)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1], nodes increasing."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return self.nodes.size


def gauss_legendre_rule(n_points: int) -> QuadratureRule:
    """The n-point Gauss-Legendre rule on [-1, 1].

    Nodes are roots of P_n found by Newton iteration from the Chebyshev
    initial guesses cos(pi*(i - 1/4)/(n + 1/2)), refined to 1e-15, then
    weights 2 / ((1 - x^2) P'_n(x)^2).  Exact for polynomials of degree
    <= 2n - 1.
    """
    if n_points < 1:
        raise ValueError(f"n_points must be >= 1, got {n_points}")
    if n_points == 1:
        return QuadratureRule(nodes=np.zeros(1), weights=np.full(1, 2.0))
    n = n_points
    i = np.arange(1, n + 1)
    x = np.cos(math.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return QuadratureRule(nodes=x[order], weights=w[order])


def _legendre_and_derivative(n: int, x: np.ndarray):
    """P_n(x) and P'_n(x) for interior points |x| < 1."""
    pm1 = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p, pm1 = ((2 * k + 1) * x * p - k * pm1) / (k + 1), p
    dp = n * (x * p - pm1) / (x * x - 1.0)
    return p, dp
