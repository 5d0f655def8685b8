"""Floating-point spectral oracle.

Samples Hermitian matrices with a fixed spectrum, reads off the GC pattern
from the eigenvalues of the leading principal submatrices, and checks
interlacing and the anti-diagonal trace identities.  Nothing computed here
feeds back into the exact modules.

RNG: numpy's PCG64; sample ``k`` of a run with seed ``s`` draws from its own
stream ``SeedSequence([s, k])``, so results do not depend on batching.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SolverError
from .shapes import Spectrum

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 50
EIGEN_TOL = 1e-9
BATCH = 2048


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))[None, :]


def _spectrum_array(lam: Spectrum) -> np.ndarray:
    return np.array([float(v) for v in lam.values])


def sample_orbit(lam: Spectrum, seed: int, index: int = 0) -> np.ndarray:
    """``U diag(lambda) U*`` with ``U`` Haar-distributed."""
    u = haar_unitary(_rng(seed, index), lam.n)
    a = (u * _spectrum_array(lam)[None, :]) @ u.conj().T
    return 0.5 * (a + a.conj().T)


def sample_batch(lam: Spectrum, seed: int, start: int, count: int) -> np.ndarray:
    return np.stack([sample_orbit(lam, seed, k) for k in range(start, start + count)])


def _off_norm(a: np.ndarray) -> np.ndarray:
    m = a.shape[-1]
    mask = ~np.eye(m, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[:, mask]) ** 2, axis=-1))


def jacobi_eigvalsh(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues, descending, of a stack of Hermitian matrices by cyclic Jacobi.

    Each matrix stops rotating once its off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``, so a matrix's result does not depend on its batch.
    """
    single = a.ndim == 2
    a = np.array(a[None] if single else a, dtype=complex)
    b, m, _ = a.shape
    if m > 1:
        scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2))))
        thresh = tol * scale
        for _ in range(max_sweeps):
            active = _off_norm(a) >= thresh
            if not active.any():
                break
            for p in range(m - 1):
                for q in range(p + 1, m):
                    g = a[:, p, q]
                    ag = np.abs(g)
                    do = active & (ag > 0)
                    safe = np.where(do, ag, 1.0)
                    e = np.where(do, g / safe, 1.0)
                    tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    c = np.where(do, c, 1.0)[:, None]
                    s = np.where(do, s, 0.0)[:, None]
                    e = e[:, None]
                    # A <- A J
                    col_p, col_q = a[:, :, p].copy(), a[:, :, q].copy()
                    a[:, :, p] = c * col_p - s * np.conj(e) * col_q
                    a[:, :, q] = s * e * col_p + c * col_q
                    # A <- J^H A
                    row_p, row_q = a[:, p, :].copy(), a[:, q, :].copy()
                    a[:, p, :] = c * row_p - s * e * row_q
                    a[:, q, :] = s * np.conj(e) * row_p + c * row_q
                    a[do, p, q] = 0.0
                    a[do, q, p] = 0.0
        else:
            if (_off_norm(a) >= thresh).any():
                raise SolverError(f"Jacobi did not converge in {max_sweeps} sweeps")
    vals = -np.sort(-np.real(np.diagonal(a, axis1=1, axis2=2)), axis=1)
    return vals[0] if single else vals


def gc_pattern(a: np.ndarray) -> np.ndarray:
    """Stack of patterns: ``out[:, m-1, i-1]`` is the i-th largest eigenvalue of the leading m x m block."""
    single = a.ndim == 2
    a = a[None] if single else a
    b, n, _ = a.shape
    out = np.full((b, n, n), np.nan)
    for m in range(1, n + 1):
        out[:, m - 1, :m] = jacobi_eigvalsh(a[:, :m, :m])
    return out[0] if single else out


def gc_map(a: np.ndarray) -> dict:
    """``(i, j) -> u_{i,j}`` for ``i + j <= n``, from the leading submatrices."""
    pat = gc_pattern(a)
    n = a.shape[-1]
    return {(i, m + 1 - i): float(pat[m - 1, i - 1]) for m in range(1, n) for i in range(1, m + 1)}


def rationalize(u: dict, max_denominator: int = 10**6) -> dict:
    return {k: Fraction(v).limit_denominator(max_denominator) for k, v in u.items()}


def contains_within(P, u: dict, tol: float) -> bool:
    """Membership after widening every inequality by ``tol``."""

    def val(ij):
        return float(P.constants[ij]) if ij in P.constants else u[ij]

    return all(val(q.greater) >= val(q.lesser) - tol for q in P.inequalities)


def _violations(pat: np.ndarray, traces: np.ndarray, lam: np.ndarray):
    """Per-sample interlacing, trace and eigenvalue errors."""
    b, n, _ = pat.shape
    inter = np.zeros(b)
    for m in range(1, n):
        inner = pat[:, m - 1, :m]
        outer = pat[:, m, : m + 1]
        # outer_i >= inner_i >= outer_{i+1}
        inter = np.maximum(inter, np.max(inner - outer[:, :m], axis=1))
        inter = np.maximum(inter, np.max(outer[:, 1:] - inner, axis=1))
    trace_err = np.zeros(b)
    for m in range(1, n + 1):
        trace_err = np.maximum(trace_err, np.abs(pat[:, m - 1, :m].sum(axis=1) - traces[:, m - 1]))
    eig_err = np.max(np.abs(pat[:, n - 1, :] - lam[None, :]), axis=1)
    return inter, trace_err, eig_err


@dataclass(frozen=True)
class OracleReport:
    spectrum: str
    samples: int
    failures: int
    max_interlacing_violation: float
    max_trace_violation: float
    max_eigenvalue_error: float
    max_constant_error: float
    tolerance: float
    seed: int

    def to_json(self) -> dict:
        return {
            "spectrum": self.spectrum,
            "samples": self.samples,
            "failures": self.failures,
            "max_interlacing_violation": self.max_interlacing_violation,
            "max_trace_violation": self.max_trace_violation,
            "max_eigenvalue_error": self.max_eigenvalue_error,
            "max_constant_error": self.max_constant_error,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }


def _constant_cells(lam: Spectrum):
    n = lam.n
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1 - i)
        if lam[i] == lam[n + 1 - j]
    ]


def verify(lam: Spectrum, samples: int = 10_000, seed: int = 0, tol: float = 1e-8) -> OracleReport:
    n = lam.n
    lam_arr = _spectrum_array(lam)
    consts = _constant_cells(lam)
    failures = 0
    worst = np.zeros(4)
    for start in range(0, samples, BATCH):
        count = min(BATCH, samples - start)
        a = sample_batch(lam, seed, start, count)
        pat = gc_pattern(a)
        traces = np.stack([np.real(np.trace(a[:, :m, :m], axis1=1, axis2=2)) for m in range(1, n + 1)], axis=1)
        inter, trace_err, eig_err = _violations(pat, traces, lam_arr)
        const_err = np.zeros(count)
        for i, j in consts:
            const_err = np.maximum(const_err, np.abs(pat[:, i + j - 2, i - 1] - float(lam[i])))
        bad = (inter > tol) | (trace_err > tol) | (eig_err > EIGEN_TOL) | (const_err > tol)
        failures += int(bad.sum())
        worst = np.maximum(worst, [inter.max(), trace_err.max(), eig_err.max(), const_err.max()])
    return OracleReport(
        str(lam), samples, failures, float(worst[0]), float(worst[1]), float(worst[2]), float(worst[3]), tol, seed
    )
