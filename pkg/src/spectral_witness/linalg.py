"""
Dense complex linear algebra on bipartite spaces.

Index convention: the basis vector |i>|k> of H_A (x) H_B sits at position
``i * dB + k`` (B index runs fastest), so an operator ``M`` on the product
space reshapes to ``M.reshape(dA, dB, dA, dB)`` with axes (i, k, j, l).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

DEFAULT_TOL = 1e-9
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class BipartiteDims:
    dA: int
    dB: int

    def __post_init__(self):
        if int(self.dA) != self.dA or int(self.dB) != self.dB or self.dA < 1 or self.dB < 1:
            raise InvalidInputError(f"dimensions must be positive integers, got {self.dA}x{self.dB}")

    @property
    def D(self) -> int:
        return self.dA * self.dB

    @property
    def d(self) -> int:
        """Maximal Schmidt rank, min(dA, dB)."""
        return min(self.dA, self.dB)


def as_dims(dims) -> BipartiteDims:
    if isinstance(dims, BipartiteDims):
        return dims
    dA, dB = dims
    return BipartiteDims(int(dA), int(dB))


def _square(M, D=None, name="matrix"):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {M.shape}")
    if D is not None and M.shape[0] != D:
        raise InvalidInputError(f"{name} must be {D}x{D}, got {M.shape[0]}x{M.shape[1]}")
    return M


def is_hermitian(M, tol=HERMITIAN_TOL) -> bool:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    scale = 1.0 + (np.abs(M).max() if M.size else 0.0)
    return bool(np.abs(M - M.conj().T).max() <= tol * scale)


def _check_hermitian(M):
    M = _square(M)
    if not is_hermitian(M):
        raise InvalidInputError("matrix is not Hermitian")
    return M


def kron(A, B) -> np.ndarray:
    """Kronecker product, (i,k),(j,l) -> (i*dB + k, j*dB + l)."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def partial_transpose(M, dims) -> np.ndarray:
    """Transpose the B factor: entry (i,k; j,l) goes to (i,l; j,k)."""
    dims = as_dims(dims)
    M = _square(M, dims.D)
    T = M.reshape(dims.dA, dims.dB, dims.dA, dims.dB).transpose(0, 3, 2, 1)
    return T.reshape(dims.D, dims.D).copy()


def partial_trace(M, dims, which="B") -> np.ndarray:
    """Trace out subsystem ``which`` ("A" or "B") and return the reduced operator."""
    dims = as_dims(dims)
    M = _square(M, dims.D)
    T = M.reshape(dims.dA, dims.dB, dims.dA, dims.dB)
    if which == "B":
        return np.einsum("ikjk->ij", T)
    if which == "A":
        return np.einsum("ikil->kl", T)
    raise InvalidInputError(f"which must be 'A' or 'B', got {which!r}")


def hermitian_eig(M):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian matrix."""
    M = _check_hermitian(M)
    H = 0.5 * (M + M.conj().T)
    w, V = np.linalg.eigh(H)
    return w, V


def eigvalsh(M) -> np.ndarray:
    M = _check_hermitian(M)
    return np.linalg.eigvalsh(0.5 * (M + M.conj().T))


def is_psd(M, tol=DEFAULT_TOL):
    """
    Positivity verdict with a threshold relative to the operator scale.

    Returns ``(verdict, min_eigenvalue)`` where the verdict is true iff
    ``min_eigenvalue >= -tol * max(1, ||M||)``.
    """
    if tol < 0:
        raise InvalidInputError("tolerance must be nonnegative")
    w = eigvalsh(M)
    scale = max(1.0, float(np.abs(w).max()))
    lo = float(w[0])
    return lo >= -tol * scale, lo


def haar_basis(D: int, seed: int) -> list[np.ndarray]:
    """
    ``D`` orthonormal vectors forming the columns of a Haar-random unitary.

    QR of a complex Ginibre matrix with the phases of diag(R) absorbed into Q,
    which makes the output a deterministic function of ``seed``.
    """
    if D < 1:
        raise InvalidInputError("D must be >= 1")
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    ph = np.diag(R) / np.abs(np.diag(R))
    Q = Q * ph
    return [Q[:, a].copy() for a in range(D)]


def haar_unitary(D: int, seed: int) -> np.ndarray:
    return np.column_stack(haar_basis(D, seed))


def random_hermitian(D: int, rng) -> np.ndarray:
    G = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    return 0.5 * (G + G.conj().T)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def maximally_entangled(d: int) -> np.ndarray:
    """(1/sqrt(d)) sum_i |ii> as a vector of length d*d."""
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
