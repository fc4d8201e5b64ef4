import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FLIP
from spectral_witness.errors import InvalidInputError
from spectral_witness.linalg import (
    BipartiteDims,
    haar_basis,
    hermitian_eig,
    is_psd,
    kron,
    maximally_entangled,
    partial_trace,
    partial_transpose,
    projector,
    random_hermitian,
)


def _loop_kron(A, B):
    m, n = A.shape
    p, q = B.shape
    out = np.zeros((m * p, n * q), dtype=complex)
    for i in range(m):
        for j in range(n):
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = A[i, j] * B[k, l]
    return out


def _loop_pt(M, dA, dB):
    out = np.zeros_like(M)
    for i in range(dA):
        for k in range(dB):
            for j in range(dA):
                for l in range(dB):
                    out[i * dB + l, j * dB + k] = M[i * dB + k, j * dB + l]
    return out


def _loop_trace_b(M, dA, dB):
    out = np.zeros((dA, dA), dtype=complex)
    for i in range(dA):
        for j in range(dA):
            out[i, j] = sum(M[i * dB + k, j * dB + k] for k in range(dB))
    return out


def _cplx(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_diagonal():
    assert np.array_equal(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]).astype(complex))


def test_kron_matches_definition(rng):
    A, B = _cplx(rng, 2, 2), _cplx(rng, 2, 3)
    assert np.abs(kron(A, B) - _loop_kron(A, B)).max() < 1e-14


def test_kron_acts_factorwise(rng):
    A, B, x, y = _cplx(rng, 2, 2), _cplx(rng, 2, 2), _cplx(rng, 2), _cplx(rng, 2)
    assert np.abs(kron(A, B) @ np.kron(x, y) - np.kron(A @ x, B @ y)).max() < 1e-12


def test_partial_transpose_factorized(rng):
    A, B = _cplx(rng, 2, 2), _cplx(rng, 2, 2)
    assert np.abs(partial_transpose(np.kron(A, B), (2, 2)) - np.kron(A, B.T)).max() < 1e-12


def test_partial_transpose_involution(rng):
    M = _cplx(rng, 4, 4)
    assert np.array_equal(partial_transpose(partial_transpose(M, (2, 2)), (2, 2)), M)


@pytest.mark.parametrize("dA,dB", [(2, 2), (2, 3), (3, 2), (3, 4)])
def test_partial_transpose_matches_loops(rng, dA, dB):
    M = _cplx(rng, dA * dB, dA * dB)
    assert np.array_equal(partial_transpose(M, (dA, dB)), _loop_pt(M, dA, dB))


def test_flip_partial_transpose_is_twice_max_entangled():
    expected = _loop_pt(FLIP, 2, 2)
    assert np.array_equal(partial_transpose(FLIP, (2, 2)), expected)
    assert np.abs(expected - 2 * projector(maximally_entangled(2))).max() < 1e-15


def test_partial_transpose_rejects_bad_shape():
    with pytest.raises(InvalidInputError):
        partial_transpose(np.eye(5), (2, 2))


def test_partial_trace_maximally_mixed():
    assert np.abs(partial_trace(np.eye(6) / 6, (2, 3), "B") - np.eye(2) / 2).max() < 1e-15


@pytest.mark.parametrize("d", [2, 3, 4])
def test_partial_trace_max_entangled(d):
    P = projector(maximally_entangled(d))
    assert np.abs(partial_trace(P, (d, d), "B") - np.eye(d) / d).max() < 1e-15
    assert np.abs(partial_trace(P, (d, d), "A") - np.eye(d) / d).max() < 1e-15


def test_partial_trace_factorized(rng):
    a, b = random_hermitian(3, rng), random_hermitian(2, rng)
    assert np.abs(partial_trace(np.kron(a, b), (3, 2), "A") - np.trace(a) * b).max() < 1e-12
    assert np.abs(partial_trace(np.kron(a, b), (3, 2), "B") - np.trace(b) * a).max() < 1e-12


def test_partial_trace_matches_loops(rng):
    M = _cplx(rng, 12, 12)
    assert np.abs(partial_trace(M, (3, 4), "B") - _loop_trace_b(M, 3, 4)).max() < 1e-13
    assert np.isclose(np.trace(partial_trace(M, (3, 4), "A")), np.trace(M))


def test_partial_trace_rejects_bad_args():
    with pytest.raises(InvalidInputError):
        partial_trace(np.eye(4), (2, 3))
    with pytest.raises(InvalidInputError):
        partial_trace(np.eye(4), (2, 2), "C")


def test_eig_flip():
    w, V = hermitian_eig(FLIP)
    assert np.allclose(w, [-1, 1, 1, 1], atol=1e-14)


def test_eig_identity():
    w, _ = hermitian_eig(np.eye(5))
    assert np.allclose(w, 1, atol=1e-15)


def test_eig_reconstruction(rng):
    M = random_hermitian(9, rng)
    w, V = hermitian_eig(M)
    assert np.abs(V @ np.diag(w) @ V.conj().T - M).max() <= 1e-10 * np.abs(M).max()
    assert np.abs(V.conj().T @ V - np.eye(9)).max() <= 1e-10
    assert np.all(np.diff(w) >= 0)


def test_eig_rejects_non_hermitian():
    with pytest.raises(InvalidInputError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_is_psd_examples():
    assert is_psd(np.eye(4)) == (True, 1.0)
    ok, lo = is_psd(FLIP)
    assert not ok and lo == pytest.approx(-1, abs=1e-14)
    ok, lo = is_psd(2 * projector(maximally_entangled(2)))
    assert ok and abs(lo) < 1e-15


def test_is_psd_threshold_scales_with_norm():
    M = np.diag([1e6, -1e-4])
    # threshold is eps * max(1, ||M||) = eps * 1e6
    assert is_psd(M, 1e-12)[0] is False
    assert is_psd(M, 1e-9)[0] is True
    assert is_psd(np.diag([1.0, -1e-4]), 1e-9)[0] is False


def test_haar_basis_trivial():
    (v,) = haar_basis(1, 3)
    assert abs(np.linalg.norm(v) - 1) < 1e-15


def test_haar_basis_orthonormal_and_resolves_identity():
    basis = haar_basis(4, 7)
    U = np.column_stack(basis)
    assert np.abs(U.conj().T @ U - np.eye(4)).max() <= 1e-10
    assert np.abs(sum(projector(v) for v in basis) - np.eye(4)).max() <= 1e-10


def test_haar_basis_deterministic():
    a, b = haar_basis(6, 11), haar_basis(6, 11)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert not np.array_equal(haar_basis(6, 12)[0], a[0])


def test_dims():
    dims = BipartiteDims(2, 3)
    assert (dims.D, dims.d) == (6, 2)
    with pytest.raises(InvalidInputError):
        BipartiteDims(0, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_partial_transpose_preserves_trace_and_hermiticity(dA, dB, seed):
    rng = np.random.default_rng(seed)
    M = random_hermitian(dA * dB, rng)
    T = partial_transpose(M, (dA, dB))
    assert np.isclose(np.trace(T), np.trace(M))
    assert np.abs(T - T.conj().T).max() < 1e-14
