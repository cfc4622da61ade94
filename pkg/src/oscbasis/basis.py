"""Construction of the paired orthonormal family {p_k, q_k}.

Seeds are p_0 = cos(omega x), q_0 = sin(omega x).  Each later member comes
from the mixed three-term recurrence: multiply by x (which in Legendre
coordinates shifts degree by exactly one), subtract the projection onto the
opposite member of the current pair and onto the same-side member one pair
back, then normalize.  All inner products go through the pairing bilinear
form, so the only approximation anywhere is in the tables themselves.

Rows are stored interleaved [p_0, q_0, p_1, q_1, ...]; row 2k and 2k+1 have
Legendre degree at most k, which makes the representation matrix B block
upper triangular.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass

from pathlib import Path

import numpy as np

from .frequency import TWO_PI, Frequency, StabilityWarning
from .pairing import LegTrigCoeffs, inner_product
from .tables import InnerProductTables

SCHEMA_VERSION = 1

# below this pre-normalization norm a direction carries no information in
# 64-bit arithmetic
DEGENERATION_THRESHOLD = 1e-13


class BasisDegenerationError(RuntimeError):
    """Recurrence produced a direction with norm below the degeneration
    threshold (orthogonality has collapsed, typically omega <= N)."""


@dataclass(frozen=True)
class RecurrenceStep:
    """Projection quotients used to build pair k+1 from pairs k and k-1.

    alpha = <x p_k, q_k> / <q_k, q_k>, beta = <x p_k, p_{k-1}> / <p_{k-1}, p_{k-1}>,
    gamma = <x q_k, p_k> / <p_k, p_k>, delta = <x q_k, q_{k-1}> / <q_{k-1}, q_{k-1}>;
    beta and delta are 0 for the first step.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass
class OscBasis:
    """Orthonormal family in Legendre-trig coordinates.

    rep[2k] is p_k, rep[2k+1] is q_k; norms[i] is the pre-normalization norm
    of row i; rec[i] holds the quotients that produced pair i+1.
    """

    freq: Frequency
    n_max: int
    rep: list
    norms: np.ndarray
    rec: list

    def content_hash(self) -> str:
        """sha256 over the canonical serialized form; identifies the basis
        so expansions can detect mismatched inputs."""
        payload = json.dumps(basis_to_doc(self), sort_keys=True,
                             separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


def _shift_degree(vec: np.ndarray) -> np.ndarray:
    """Coefficients of x*f for f given in Legendre coordinates, via
    x P_j = ((j+1) P_{j+1} + j P_{j-1}) / (2j+1)."""
    L = vec.size
    out = np.zeros(L + 1)
    j = np.arange(L)
    out[1:] += vec * (j + 1) / (2 * j + 1)
    if L > 1:
        out[: L - 1] += vec[1:] * (j[1:] / (2 * j[1:] + 1))
    return out


def _mul_x(f: LegTrigCoeffs) -> LegTrigCoeffs:
    return LegTrigCoeffs(a=_shift_degree(f.a), b=_shift_degree(f.b))


def _axpy(f: LegTrigCoeffs, coef: float, g: LegTrigCoeffs) -> LegTrigCoeffs:
    """f + coef * g with zero-padding to the longer length."""
    n = max(f.a.size, g.a.size)
    a = np.zeros(n)
    b = np.zeros(n)
    a[: f.a.size] = f.a
    b[: f.b.size] = f.b
    a[: g.a.size] += coef * g.a
    b[: g.b.size] += coef * g.b
    return LegTrigCoeffs(a=a, b=b)


def _checked_norm(f: LegTrigCoeffs, tables: InnerProductTables,
                  member_index: int, freq: Frequency, n_max: int) -> float:
    nsq = inner_product(f, f, tables)
    if nsq < DEGENERATION_THRESHOLD ** 2:
        raise BasisDegenerationError(
            f"basis degenerated at member {member_index}: pre-normalization "
            f"norm^2 = {nsq:.3e} is below {DEGENERATION_THRESHOLD}^2 "
            f"(omega={freq.omega:.6g}, n_max={n_max}; the recurrence is "
            f"reliable only for omega > n_max)"
        )
    return float(np.sqrt(nsq))


def _run_recurrence(freq: Frequency, n_max: int, tables: InnerProductTables,
                    normalize: bool, reorthogonalize: bool):
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if tables.n_max < n_max + 1:
        raise ValueError(
            f"tables.n_max={tables.n_max} too small: multiplication by x "
            f"raises the degree, need tables with n_max >= {n_max + 1}"
        )
    # orthogonality holds up while the polynomial degree stays below the
    # number of oscillation periods, so the warning threshold here is
    # omega / 2pi, not the raw omega that the table recursion cares about
    if freq.omega / TWO_PI <= n_max:
        warnings.warn(
            StabilityWarning(
                f"omega={freq.omega:.6g} spans only {freq.omega / TWO_PI:.4g} "
                f"oscillation periods but n_max={n_max}: outside the stable "
                f"regime, expect orthogonality loss"
            ),
            stacklevel=3,
        )

    rows: list[LegTrigCoeffs] = []
    norms: list[float] = []
    rec: list[RecurrenceStep] = []

    for seed in (LegTrigCoeffs(a=np.ones(1), b=np.zeros(1)),
                 LegTrigCoeffs(a=np.zeros(1), b=np.ones(1))):
        h = _checked_norm(seed, tables, len(rows) // 2, freq, n_max)
        norms.append(h)
        rows.append(_scaled(seed, 1.0 / h) if normalize else seed)

    for k in range(n_max):
        p_k, q_k = rows[2 * k], rows[2 * k + 1]
        xp = _mul_x(p_k)
        xq = _mul_x(q_k)
        qq = inner_product(q_k, q_k, tables)
        pp = inner_product(p_k, p_k, tables)
        alpha = inner_product(xp, q_k, tables) / qq
        gamma = inner_product(xq, p_k, tables) / pp
        if k > 0:
            p_prev, q_prev = rows[2 * k - 2], rows[2 * k - 1]
            beta = inner_product(xp, p_prev, tables) / inner_product(
                p_prev, p_prev, tables)
            delta = inner_product(xq, q_prev, tables) / inner_product(
                q_prev, q_prev, tables)
        else:
            beta = delta = 0.0
        rec.append(RecurrenceStep(alpha=alpha, beta=beta,
                                  gamma=gamma, delta=delta))

        p_new = _axpy(xp, -alpha, q_k)
        q_new = _axpy(xq, -gamma, p_k)
        if k > 0:
            p_new = _axpy(p_new, -beta, p_prev)
            q_new = _axpy(q_new, -delta, q_prev)
        if reorthogonalize:
            for prev in rows:
                coef = inner_product(p_new, prev, tables) / inner_product(
                    prev, prev, tables)
                p_new = _axpy(p_new, -coef, prev)
            for prev in rows:
                coef = inner_product(q_new, prev, tables) / inner_product(
                    prev, prev, tables)
                q_new = _axpy(q_new, -coef, prev)

        for new in (p_new, q_new):
            h = _checked_norm(new, tables, k + 1, freq, n_max)
            norms.append(h)
            rows.append(_scaled(new, 1.0 / h) if normalize else new)

    return rows, np.array(norms), rec


def _scaled(f: LegTrigCoeffs, factor: float) -> LegTrigCoeffs:
    return LegTrigCoeffs(a=f.a * factor, b=f.b * factor)


def build_basis(freq: Frequency, n_max: int, tables: InnerProductTables,
                reorthogonalize: bool = False) -> OscBasis:
    """Run the mixed recurrence with per-step normalization.

    Parameters
    ----------
    freq : Frequency
    n_max : int
        Largest pair index N; the basis has 2(N+1) rows.
    tables : InnerProductTables
        Must cover degree n_max + 1 (the x-shift overshoot).
    reorthogonalize : bool
        When true, each new row gets one extra orthogonalization pass
        against all previous rows before normalization.  Off by default;
        useful near the omega <= N boundary.

    Raises BasisDegenerationError when a pre-normalization norm drops below
    1e-13, and warns with StabilityWarning when the oscillation period count
    omega / (2 pi) does not exceed n_max.
    """
    if freq.omega != tables.freq.omega:
        raise ValueError(
            f"frequency mismatch: basis requested at omega={freq.omega!r} "
            f"but tables were built at omega={tables.freq.omega!r}"
        )
    rows, norms, rec = _run_recurrence(freq, n_max, tables,
                                       normalize=True,
                                       reorthogonalize=reorthogonalize)
    return OscBasis(freq=freq, n_max=n_max, rep=rows, norms=norms, rec=rec)


def monic_norm_profile(freq: Frequency, n_max: int,
                       tables: InnerProductTables) -> np.ndarray:
    """Pre-normalization norms h_k of the monic-style run (no rescaling of
    recurrence inputs), p-side rows only, k = 0 ... n_max.

    This is the decay diagnostic: h_0 = ||cos(omega x)|| and the h_k shrink
    rapidly, which is why build_basis normalizes at every step.  The q-side
    norms track the p-side ones closely and are not reported separately.
    """
    _, norms, _ = _run_recurrence(freq, n_max, tables, normalize=False,
                                  reorthogonalize=False)
    return norms[0::2].copy()


def evaluate_member(basis: OscBasis, row_index: int, x):
    """Value of basis row row_index at x (scalar or ndarray)."""
    n_rows = 2 * (basis.n_max + 1)
    if not 0 <= row_index < n_rows:
        raise IndexError(
            f"row_index {row_index} out of range for basis with {n_rows} rows"
        )
    return basis.rep[row_index].evaluate(basis.freq.omega, x)


def member_values(basis: OscBasis, x: np.ndarray) -> np.ndarray:
    """All rows evaluated at once: shape (2(N+1), len(x))."""
    x = np.asarray(x, dtype=float)
    return np.array([row.evaluate(basis.freq.omega, x) for row in basis.rep])


def basis_to_doc(basis: OscBasis) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "omega": basis.freq.omega,
        "k": basis.freq.k,
        "epsilon": basis.freq.epsilon,
        "n_max": basis.n_max,
        "rows": [{"a": row.a.tolist(), "b": row.b.tolist()}
                 for row in basis.rep],
        "norms": np.asarray(basis.norms).tolist(),
        "rec": [{"alpha": r.alpha, "beta": r.beta,
                 "gamma": r.gamma, "delta": r.delta} for r in basis.rec],
    }


def basis_from_doc(doc: dict) -> OscBasis:
    freq = Frequency(omega=doc["omega"], k=doc["k"], epsilon=doc["epsilon"])
    rows = [LegTrigCoeffs(a=np.array(r["a"], dtype=float),
                          b=np.array(r["b"], dtype=float))
            for r in doc["rows"]]
    rec = [RecurrenceStep(alpha=r["alpha"], beta=r["beta"],
                          gamma=r["gamma"], delta=r["delta"])
           for r in doc["rec"]]
    return OscBasis(freq=freq, n_max=doc["n_max"], rep=rows,
                    norms=np.array(doc["norms"], dtype=float), rec=rec)


def save_basis(basis: OscBasis, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(basis_to_doc(basis), indent=2) + "\n")
    return path


def load_basis(path) -> OscBasis:
    with open(path) as fh:
        return basis_from_doc(json.load(fh))


def representation_matrix(basis: OscBasis) -> np.ndarray:
    """B as a square array: row i is member i in interleaved
    (a_0, b_0, a_1, b_1, ...) coordinate order, zero-padded."""
    size = 2 * (basis.n_max + 1)
    B = np.zeros((size, size))
    for i, row in enumerate(basis.rep):
        B[i, 0:2 * row.a.size:2] = row.a
        B[i, 1:2 * row.b.size:2] = row.b
    return B


def save_basis_csv(basis: OscBasis, path) -> Path:
    """B exported as CSV, members as rows, interleaved columns."""
    path = Path(path)
    size = 2 * (basis.n_max + 1)
    header = ",".join(f"c{i}" for i in range(size))
    np.savetxt(path, representation_matrix(basis), fmt="%.17g",
               delimiter=",", header=header, comments="")
    return path
