"""Brute-force verification oracle.

Composite Gauss-Legendre quadrature with enough panels to resolve the
fastest integrand oscillation (cos(2*omega*x) and sin(2*omega*x)), plus the
direct inner-product, Gram-matrix, Hilbert-limit, and condition-number
computations that the rest of the package is checked against.  Nothing here
shares code with the table recursion it verifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .frequency import Frequency
from .legendre import QuadratureRule, gauss_legendre_rule, legendre_table


@dataclass(frozen=True)
class OracleConfig:
    """Resolution knobs for the composite quadrature.

    Panel count for frequency omega is max(min_panels,
    ceil(panels_per_period * omega / pi)), so with the default 4 panels per
    period of cos(2*omega*x) each panel sees about a quarter period.
    """

    panels_per_period: int = 4
    points_per_panel: int = 24
    min_panels: int = 8

    def __post_init__(self):
        if self.panels_per_period < 2:
            raise ValueError("panels_per_period must be >= 2")
        if self.points_per_panel < 8:
            raise ValueError("points_per_panel must be >= 8")
        if self.min_panels < 1:
            raise ValueError("min_panels must be >= 1")

    def panel_count(self, omega: float) -> int:
        return max(self.min_panels, math.ceil(self.panels_per_period * omega / math.pi))


@lru_cache(maxsize=64)
def _cached_rule(omega: float, panels_per_period: int, points_per_panel: int,
                 min_panels: int) -> QuadratureRule:
    cfg = OracleConfig(panels_per_period, points_per_panel, min_panels)
    n_panels = cfg.panel_count(omega)
    base = gauss_legendre_rule(points_per_panel)
    edges = np.linspace(-1.0, 1.0, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * base.nodes[None, :]).ravel()
    weights = (half[:, None] * base.weights[None, :]).ravel()
    return QuadratureRule(nodes=nodes, weights=weights)


def composite_rule(omega: float, cfg: OracleConfig | None = None) -> QuadratureRule:
    """Composite Gauss-Legendre rule on [-1, 1] resolving oscillations up to
    frequency 2*omega."""
    cfg = cfg or OracleConfig()
    return _cached_rule(float(omega), cfg.panels_per_period,
                        cfg.points_per_panel, cfg.min_panels)


def _sample(F, nodes: np.ndarray) -> np.ndarray:
    values = np.asarray(F(nodes), dtype=float)
    if values.shape != nodes.shape:
        values = np.array([float(F(t)) for t in nodes])
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.nonzero(bad)[0][0])
        raise ValueError(
            f"integrand returned non-finite value {values[i]!r} at x={nodes[i]!r}"
        )
    return values


def integrate(F, freq: Frequency, cfg: OracleConfig | None = None) -> float:
    """Integral of F over [-1, 1] by composite Gauss-Legendre quadrature.

    Accurate to about 1e-12 absolute for integrands of the form
    (polynomial of degree <= 40) * trig(<= 2*omega) at default settings.
    """
    rule = composite_rule(freq.omega, cfg)
    values = _sample(F, rule.nodes)
    return float(np.sum(rule.weights * values))


_ENTRY_KINDS = ("m2", "m3", "m4", "m5", "m6")


def oracle_entry(kind: str, j: int, k: int, freq: Frequency,
                 cfg: OracleConfig | None = None) -> float:
    """Direct quadrature of one defining integrand of M2 ... M6.

    kind 'm2' means <P_j cos, P_k sin>, 'm3' <P_j cos, P_k cos>, 'm4'
    <P_j sin, P_k sin>, 'm5' <P_j, P_k cos(2 omega x)>, 'm6'
    <P_j, P_k sin(2 omega x)>.
    """
    kind = kind.lower()
    if kind not in _ENTRY_KINDS:
        raise ValueError(f"kind must be one of {_ENTRY_KINDS}, got {kind!r}")
    if j < 0 or k < 0:
        raise ValueError(f"indices must be >= 0, got j={j}, k={k}")
    omega = freq.omega
    rule = composite_rule(omega, cfg)
    x, w = rule.nodes, rule.weights
    P = legendre_table(max(j, k), x)
    pj, pk = P[j], P[k]
    if kind == "m2":
        values = pj * np.cos(omega * x) * pk * np.sin(omega * x)
    elif kind == "m3":
        values = pj * np.cos(omega * x) * pk * np.cos(omega * x)
    elif kind == "m4":
        values = pj * np.sin(omega * x) * pk * np.sin(omega * x)
    elif kind == "m5":
        values = pj * pk * np.cos(2.0 * omega * x)
    else:
        values = pj * pk * np.sin(2.0 * omega * x)
    return float(np.sum(w * values))


def oracle_tables(freq: Frequency, n_max: int,
                  cfg: OracleConfig | None = None) -> dict[str, np.ndarray]:
    """All five non-trivial tables M2 ... M6 at once by batched quadrature.

    Returns {'m2': ..., 'm6': ...} with (n_max+1) x (n_max+1) matrices.
    Much faster than calling oracle_entry per entry; used by verify_tables.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    omega = freq.omega
    rule = composite_rule(omega, cfg)
    x, w = rule.nodes, rule.weights
    P = legendre_table(n_max, x)
    c = np.cos(omega * x)
    s = np.sin(omega * x)
    Pc = P * c
    Ps = P * s
    return {
        "m2": (Pc * w) @ Ps.T,
        "m3": (Pc * w) @ Pc.T,
        "m4": (Ps * w) @ Ps.T,
        "m5": (P * (w * np.cos(2.0 * omega * x))) @ P.T,
        "m6": (P * (w * np.sin(2.0 * omega * x))) @ P.T,
    }


def member_gram(members, omega: float, cfg: OracleConfig | None = None) -> np.ndarray:
    """Gram matrix of evaluable members by quadrature, independent of any
    recursion tables.  Members need an evaluate(omega, x) method."""
    rule = composite_rule(omega, cfg)
    x, w = rule.nodes, rule.weights
    if len(members) == 0:
        return np.zeros((0, 0))
    E = np.array([m.evaluate(omega, x) for m in members])
    G = (E * w) @ E.T
    return 0.5 * (G + G.T)


def monomial_gram(freq: Frequency, n: int, cfg: OracleConfig | None = None) -> np.ndarray:
    """Gram matrix H[i][j] = <x^i cos(omega x), x^j cos(omega x)>.

    This is the ill-conditioned object the Legendre-trig representation
    avoids; for large omega it approaches hilbert_limit(n).
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    omega = freq.omega
    rule = composite_rule(omega, cfg)
    x, w = rule.nodes, rule.weights
    V = np.empty((n + 1, x.size))
    V[0] = 1.0
    for i in range(1, n + 1):
        V[i] = V[i - 1] * x
    A = V * np.cos(omega * x)
    H = (A * w) @ A.T
    return 0.5 * (H + H.T)


def hilbert_limit(n: int) -> np.ndarray:
    """The omega -> infinity limit of monomial_gram on [-1, 1]:
    L[i][j] = (1 + (-1)^(i+j)) / (2 (i+j+1)).

    Odd i+j entries vanish by parity; the even ones reproduce Hilbert-matrix
    behaviour, which is what makes the monomial-trig Gram ill-conditioned.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    i = np.arange(n + 1)
    s = i[:, None] + i[None, :]
    return (1.0 + (-1.0) ** s) / (2.0 * (s + 1))


def cond_estimate(matrix) -> float:
    """2-norm condition number estimate for a symmetric matrix.

    Largest eigenvalue magnitude by power iteration, full eigenvalue range
    by cyclic Jacobi sweeps; returns max|lambda| / min|lambda| (inf when an
    eigenvalue is exactly zero).  Accurate well within a factor of 2 for the
    matrix sizes used here.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-10 * max(scale, 1.0)):
        raise ValueError("matrix must be symmetric")
    n = A.shape[0]
    if n == 0:
        return 1.0
    A = 0.5 * (A + A.T)
    if scale == 0.0:
        return math.inf
    lam_power = _power_lambda_max(A)
    eigs = _jacobi_eigenvalues(A)
    lam_max = max(lam_power, float(np.max(np.abs(eigs))))
    lam_min = float(np.min(np.abs(eigs)))
    if lam_min == 0.0:
        return math.inf
    return lam_max / lam_min


def _power_lambda_max(A: np.ndarray, max_iter: int = 500, tol: float = 1e-13) -> float:
    """Largest |eigenvalue| of symmetric A by power iteration with a
    Rayleigh-quotient stop, seeded deterministically."""
    n = A.shape[0]
    rng = np.random.default_rng(0)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = A @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        lam_new = float(v @ (A @ v))
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            lam = lam_new
            break
        lam = lam_new
    return abs(lam)


def _jacobi_eigenvalues(A: np.ndarray, max_sweeps: int = 30,
                        tol: float = 1e-14) -> np.ndarray:
    """Eigenvalues of symmetric A by cyclic Jacobi rotations.

    Inverse-free, so tiny eigenvalues of ill-conditioned matrices come out
    with full relative accuracy of the off-diagonal annihilation; 30 sweeps
    are far more than the quadratic convergence needs at these sizes.
    """
    a = np.array(A, dtype=float)
    n = a.shape[0]
    if n == 1:
        return np.diag(a).copy()
    norm = np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol * max(norm, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rowp = a[p].copy()
                rowq = a[q].copy()
                a[p] = c * rowp - s * rowq
                a[q] = s * rowp + c * rowq
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
    return np.sort(np.diag(a))
