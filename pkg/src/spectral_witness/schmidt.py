"""
Schmidt decomposition, k-norms and a see-saw optimizer over Schmidt-rank-k vectors.

The see-saw routines never call an SVD: they alternate between the A and B
factor subspaces and solve each half-step as a small Hermitian eigenproblem
(or in closed form for a rank-one objective). That keeps them usable as an
independent check on the SVD-based :func:`k_norm_sq`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .linalg import BipartiteDims, as_dims

RANK_TOL = 1e-10
NORMALIZED_TOL = 1e-12
SEESAW_RTOL = 1e-10
SEESAW_MAX_SWEEPS = 200
DEFAULT_RESTARTS = 64


@dataclass(frozen=True, eq=False)
class BipartiteVector:
    dims: BipartiteDims
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = as_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != dims.D:
            raise InvalidInputError(f"expected {dims.D} amplitudes for {dims.dA}x{dims.dB}, got {amps.size}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def is_normalized(self) -> bool:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= NORMALIZED_TOL

    def matrix(self) -> np.ndarray:
        """Amplitudes as a dA x dB matrix, psi = sum_ik M[i,k] |i>|k>."""
        return self.amplitudes.reshape(self.dims.dA, self.dims.dB)

    def normalized(self) -> "BipartiteVector":
        n = self.norm
        if n == 0:
            raise InvalidInputError("cannot normalize the zero vector")
        return BipartiteVector(self.dims, self.amplitudes / n)


def bipartite(amplitudes, dims) -> BipartiteVector:
    if isinstance(amplitudes, BipartiteVector):
        return amplitudes
    return BipartiteVector(as_dims(dims), amplitudes)


@dataclass(frozen=True, eq=False)
class SchmidtData:
    coefficients: np.ndarray
    left_vectors: list
    right_vectors: list
    rank: int

    def reconstruct(self) -> np.ndarray:
        return sum(s * np.kron(a, b) for s, a, b in zip(self.coefficients, self.left_vectors, self.right_vectors))


def schmidt_decompose(psi: BipartiteVector, rank_tol: float = RANK_TOL) -> SchmidtData:
    """
    Schmidt decomposition from the singular values of the dA x dB reshaping.

    Non-normalized input is accepted; the squared coefficients then sum to
    <psi|psi>.
    """
    if psi.norm == 0:
        raise InvalidInputError("Schmidt decomposition of the zero vector")
    U, s, Vh = np.linalg.svd(psi.matrix())
    d = psi.dims.d
    left = [U[:, j].copy() for j in range(d)]
    right = [Vh[j, :].copy() for j in range(d)]
    return SchmidtData(s[:d].copy(), left, right, int(np.count_nonzero(s > rank_tol)))


def schmidt_coefficients(psi: BipartiteVector) -> np.ndarray:
    return np.linalg.svd(psi.matrix(), compute_uv=False)


def schmidt_rank(psi: BipartiteVector, rank_tol: float = RANK_TOL) -> int:
    return int(np.count_nonzero(schmidt_coefficients(psi) > rank_tol))


def _check_k(psi: BipartiteVector, k: int) -> None:
    if int(k) != k or not 1 <= k <= psi.dims.d:
        raise InvalidInputError(f"k must be in [1, {psi.dims.d}], got {k}")


def k_norm_sq(psi: BipartiteVector, k: int) -> float:
    """Sum of the ``k`` largest squared Schmidt coefficients of a normalized vector."""
    _check_k(psi, k)
    if not psi.is_normalized:
        raise InvalidInputError("k-norm requires a normalized vector")
    s = schmidt_coefficients(psi)
    return float(np.sum(s[:k] ** 2))


def k_norms_sq(psi: BipartiteVector) -> np.ndarray:
    """All squared k-norms, entry ``k-1`` holding ||psi||_k^2."""
    if not psi.is_normalized:
        raise InvalidInputError("k-norm requires a normalized vector")
    return np.cumsum(schmidt_coefficients(psi) ** 2)


def _orth(X: np.ndarray) -> np.ndarray:
    return np.linalg.qr(X)[0]


def _random_frame(rng, n: int, k: int) -> np.ndarray:
    return _orth(rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k)))


def _seesaw_overlap(M: np.ndarray, k: int, frames: np.ndarray) -> np.ndarray:
    # Maximize |<psi|phi>|^2 over SR(phi) <= k, one see-saw per starting frame.
    # With the A-side frame Qa fixed the best phi = Qa X has X proportional to
    # Qa^H M, value ||Qa^H M||^2; symmetric on the B side. Restarts are
    # stacked on axis 0 and swept together until every one has converged.
    Qa = frames
    value = np.zeros(len(frames))
    for _ in range(SEESAW_MAX_SWEEPS):
        X = Qa.conj().transpose(0, 2, 1) @ M
        Qb = _orth(X.transpose(0, 2, 1))
        Y = M @ Qb.conj()
        new = np.einsum("rik,rik->r", Y.conj(), Y).real
        Qa = _orth(Y)
        done = np.all(new - value <= SEESAW_RTOL * np.maximum(new, 1e-300))
        value = np.maximum(value, new)
        if done:
            break
    return value


def k_norm_sq_oracle(psi: BipartiteVector, k: int, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> float:
    """
    Variational k-norm: max |<psi|phi>|^2 over unit phi of Schmidt rank <= k.

    Each restart runs a see-saw from a random A-side frame drawn with seed
    ``seed + r``; the result is the maximum over restarts and so is a lower
    bound on :func:`k_norm_sq`.
    """
    _check_k(psi, k)
    if not psi.is_normalized:
        raise InvalidInputError("k-norm requires a normalized vector")
    if restarts < 1:
        raise InvalidInputError("restarts must be >= 1")
    frames = np.stack([_random_frame(np.random.default_rng(seed + r), psi.dims.dA, k) for r in range(restarts)])
    return float(_seesaw_overlap(psi.matrix(), k, frames).max())


@dataclass(frozen=True, eq=False)
class SeesawResult:
    value: float
    vector: np.ndarray


def _lowest(H: np.ndarray):
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    return float(w[0]), V[:, 0]


def _seesaw_min_run(W: np.ndarray, dA: int, dB: int, k: int, rng) -> SeesawResult:
    Qa = _random_frame(rng, dA, k)
    value = np.inf
    phi = None
    for _ in range(SEESAW_MAX_SWEEPS):
        # A frame fixed: phi = sum_j a_j (x) b_j, free b_j stacked in x (length k*dB)
        V = np.kron(Qa, np.eye(dB))
        _, x = _lowest(V.conj().T @ W @ V)
        # row space of phi = Qa X is the row space of X
        Qb = _orth(x.reshape(k, dB).T)
        # B frame fixed: phi = sum_m y_m (x) q_m, y stacked as (dA, k)
        V = np.kron(np.eye(dA), Qb)
        new, y = _lowest(V.conj().T @ W @ V)
        Y = y.reshape(dA, k)
        phi = (Y @ Qb.T).reshape(-1)
        Qa = _orth(Y)
        if value - new <= SEESAW_RTOL * max(abs(new), 1.0):
            value = min(value, new)
            break
        value = new
    return SeesawResult(value, phi)


def seesaw_min_expectation(W, dims, k: int = 1, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> SeesawResult:
    """
    Minimize <phi|W|phi> over unit vectors phi with Schmidt rank <= k.

    The reported value is an upper bound on the true minimum. A witness is a
    k-EW exactly when that minimum is nonnegative.
    """
    dims = as_dims(dims)
    W = np.asarray(W, dtype=complex)
    if W.shape != (dims.D, dims.D):
        raise InvalidInputError(f"operator must be {dims.D}x{dims.D}")
    if int(k) != k or not 1 <= k <= dims.d:
        raise InvalidInputError(f"k must be in [1, {dims.d}], got {k}")
    if restarts < 1:
        raise InvalidInputError("restarts must be >= 1")
    runs = [_seesaw_min_run(W, dims.dA, dims.dB, k, np.random.default_rng(seed + r)) for r in range(restarts)]
    return min(runs, key=lambda r: r.value)
