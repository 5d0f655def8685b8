import numpy as np
import pytest

from _support import polytope
from gcfibers.errors import SolverError
from gcfibers.monotone import partial_trace
from gcfibers.oracle import (
    contains_within,
    gc_map,
    gc_pattern,
    haar_unitary,
    jacobi_eigvalsh,
    rationalize,
    sample_batch,
    sample_orbit,
    verify,
    _rng,
)
from gcfibers.polytope import GCPoint, contains
from gcfibers.shapes import Spectrum

FL3 = Spectrum.of([2, 0, -2])
FL5 = Spectrum.of([4, 2, 0, -2, -4])
GR36 = Spectrum.of([3, 3, 3, -3, -3, -3])


def test_haar_unitary_is_unitary():
    u = haar_unitary(_rng(1, 0), 5)
    assert np.allclose(u.conj().T @ u, np.eye(5), atol=1e-12)


def test_sample_spectrum_and_trace():
    for k in range(20):
        a = sample_orbit(FL5, 11, k)
        assert np.allclose(a, a.conj().T, atol=1e-12)
        assert abs(np.trace(a).real) < 1e-10
        ref = np.sort(np.linalg.eigvalsh(a))[::-1]
        assert np.max(np.abs(ref - [4, 2, 0, -2, -4])) < 1e-9


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(5)
    for n in range(1, 8):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = z + z.conj().T
        ours = jacobi_eigvalsh(h)
        ref = np.sort(np.linalg.eigvalsh(h))[::-1]
        assert np.max(np.abs(ours - ref)) < 1e-10


def test_jacobi_rotation_annihilates_pivot():
    # one full sweep on a 2x2 matrix must diagonalize it exactly
    h = np.array([[1.0, 2 - 1j], [2 + 1j, -3.0]])
    vals = jacobi_eigvalsh(h, max_sweeps=1)
    assert np.allclose(vals, np.sort(np.linalg.eigvalsh(h))[::-1], atol=1e-13)


def test_jacobi_non_convergence():
    rng = np.random.default_rng(0)
    z = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    with pytest.raises(SolverError):
        jacobi_eigvalsh(z + z.conj().T, max_sweeps=1)


def test_identity_conjugation():
    u = gc_map(np.diag([2.0, 0.0, -2.0]).astype(complex))
    assert u == {(1, 1): 2.0, (1, 2): 2.0, (2, 1): 0.0}


def test_tridiagonal_pattern():
    # characteristic polynomials x, x^2 - 2, x^3 - 4x
    t = np.diag([np.sqrt(2)] * 2, 1)
    u = gc_map((t + t.T).astype(complex))
    assert abs(u[(1, 1)]) < 1e-14
    assert abs(u[(1, 2)] - np.sqrt(2)) < 1e-12 and abs(u[(2, 1)] + np.sqrt(2)) < 1e-12


def test_rationalized_samples_lie_in_polytope():
    P = polytope("1,2:3")
    for k in range(50):
        u = gc_map(sample_orbit(FL3, 2, k))
        assert contains_within(P, u, 1e-9)
        q = rationalize(u)
        inside = contains(P, GCPoint({v: q[v] for v in P.variables}))
        # rounding to 1e-6 may push a point out only if it sat within 1e-6 of a facet
        assert inside or not contains_within(P, u, -1e-6)


def test_anti_diagonal_traces():
    P = polytope("1,2,3,4:5")
    for k in range(30):
        a = sample_orbit(FL5, 4, k)
        u = gc_map(a)
        for m in range(1, 5):
            assert abs(float(partial_trace(P, u, m, 1)) - np.trace(a[:m, :m]).real) < 1e-9


def test_batches_do_not_change_results():
    batch = sample_batch(FL5, 1, 0, 6)
    together = gc_pattern(batch)
    for k in range(6):
        assert np.array_equal(together[k], gc_pattern(batch[k]), equal_nan=True)


def test_small_runs():
    rep = verify(Spectrum.of([1, 0]), samples=10, seed=3)
    assert rep.failures == 0 and rep.samples == 10
    assert verify(FL3, 50, 9).to_json() == verify(FL3, 50, 9).to_json()
    assert list(rep.to_json())[:4] == ["spectrum", "samples", "failures", "max_interlacing_violation"]


def test_gr36_constants_reproduced():
    rep = verify(GR36, samples=200, seed=1)
    assert rep.failures == 0
    assert rep.max_constant_error < 1e-8
