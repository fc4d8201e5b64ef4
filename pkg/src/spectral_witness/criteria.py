"""
Spectral separability tests (PPT, reduction, entropic, majorization), random
state generators and the witness expectation functional.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .linalg import DEFAULT_TOL, BipartiteDims, as_dims, eigvalsh, partial_trace, partial_transpose

STATE_TOL = 1e-10
ENTROPY_TOL = 1e-9
MAJORIZATION_TOL = 1e-9
PPT_BISECTION_STEPS = 20


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: BipartiteDims
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = as_dims(self.dims)
        M = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", M)
        if M.shape != (dims.D, dims.D):
            raise InvalidInputError(f"density matrix must be {dims.D}x{dims.D}, got {M.shape}")
        if np.abs(M - M.conj().T).max() > STATE_TOL:
            raise InvalidInputError("density matrix is not Hermitian")
        tr = np.trace(M).real
        if abs(tr - 1) > STATE_TOL:
            raise InvalidInputError(f"density matrix has trace {tr}")
        lo = eigvalsh(M)[0]
        if lo < -STATE_TOL:
            raise InvalidInputError(f"density matrix has negative eigenvalue {lo}")

    def reduced(self, keep: str) -> np.ndarray:
        """Reduced state on subsystem ``keep``."""
        return partial_trace(self.matrix, self.dims, "B" if keep == "A" else "A")


def pure_state(psi, dims) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(dims, np.outer(psi, psi.conj()))


def ppt_check(rho: DensityMatrix, tol: float = DEFAULT_TOL):
    """``(passed, min eigenvalue of the partial transpose)``."""
    lo = float(eigvalsh(partial_transpose(rho.matrix, rho.dims))[0])
    return lo >= -tol, lo


def reduction_check(rho: DensityMatrix, tol: float = DEFAULT_TOL):
    """I (x) rho_B - rho >= 0 and rho_A (x) I - rho >= 0; margin is the smaller minimum eigenvalue."""
    dA, dB = rho.dims.dA, rho.dims.dB
    left = np.kron(np.eye(dA), rho.reduced("B")) - rho.matrix
    right = np.kron(rho.reduced("A"), np.eye(dB)) - rho.matrix
    margin = float(min(eigvalsh(left)[0], eigvalsh(right)[0]))
    return margin >= -tol, margin


def von_neumann_entropy(M) -> float:
    """Entropy in nats; eigenvalues are clipped at zero and 0 log 0 = 0."""
    w = np.clip(eigvalsh(M), 0.0, None)
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def shannon_entropy(p) -> float:
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def entropy_check(rho: DensityMatrix):
    """S(rho) - S(rho_A) >= 0 and S(rho) - S(rho_B) >= 0; returns ``(passed, (gap_A, gap_B))``."""
    s = von_neumann_entropy(rho.matrix)
    gaps = (s - von_neumann_entropy(rho.reduced("A")), s - von_neumann_entropy(rho.reduced("B")))
    return bool(min(gaps) >= -ENTROPY_TOL), gaps


def majorization_margin(x, y) -> float:
    """
    Smallest prefix-sum gap sum_{i<=k} x_i - sum_{i<=k} y_i over descending-sorted vectors.

    Nonnegative iff ``x`` majorizes ``y``. The shorter vector is zero-padded.
    """
    n = max(len(x), len(y))
    xs = np.zeros(n)
    ys = np.zeros(n)
    xs[: len(x)] = np.sort(np.asarray(x, dtype=float))[::-1]
    ys[: len(y)] = np.sort(np.asarray(y, dtype=float))[::-1]
    return float(np.min(np.cumsum(xs) - np.cumsum(ys)))


def majorization_check(rho: DensityMatrix):
    """lambda(rho_A) and lambda(rho_B) both majorize lambda(rho); returns ``(passed, (margin_A, margin_B))``."""
    w = eigvalsh(rho.matrix)
    margins = (
        majorization_margin(eigvalsh(rho.reduced("A")), w),
        majorization_margin(eigvalsh(rho.reduced("B")), w),
    )
    return bool(min(margins) >= -MAJORIZATION_TOL), margins


@dataclass(frozen=True)
class CriteriaReport:
    ppt: bool
    reduction: bool
    entropic: bool
    majorization: bool
    ppt_margin: float
    reduction_margin: float
    entropic_margin: float
    majorization_margin: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def criteria_report(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> CriteriaReport:
    ppt, m_ppt = ppt_check(rho, tol)
    red, m_red = reduction_check(rho, tol)
    ent, m_ent = entropy_check(rho)
    maj, m_maj = majorization_check(rho)
    return CriteriaReport(ppt, red, ent, maj, m_ppt, m_red, min(m_ent), min(m_maj))


def _ginibre(rng, n, m):
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_ppt_state(dims, seed: int) -> DensityMatrix:
    """
    Full-rank Wishart state mixed with white noise just enough to be PPT.

    rho(t) = t rho0 + (1 - t) I/D with t the largest value in [0, 1], found by
    bisection, for which rho(t)^Gamma is positive semidefinite.
    """
    dims = as_dims(dims)
    rng = np.random.default_rng(seed)
    G = _ginibre(rng, dims.D, dims.D)
    rho0 = G @ G.conj().T
    rho0 /= np.trace(rho0).real
    white = np.eye(dims.D) / dims.D

    def ppt_min(t):
        return eigvalsh(partial_transpose(t * rho0 + (1 - t) * white, dims))[0]

    if ppt_min(1.0) >= 0:
        t = 1.0
    else:
        lo, hi = 0.0, 1.0
        for _ in range(PPT_BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if ppt_min(mid) >= 0:
                lo = mid
            else:
                hi = mid
        t = lo
    rho = t * rho0 + (1 - t) * white
    return DensityMatrix(dims, 0.5 * (rho + rho.conj().T))


def random_product_vector(dims, rng) -> np.ndarray:
    dims = as_dims(dims)
    a = _ginibre(rng, dims.dA, 1)[:, 0]
    b = _ginibre(rng, dims.dB, 1)[:, 0]
    v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
    return v


def random_separable_state(dims, n_terms: int, seed: int) -> DensityMatrix:
    """Convex mixture of ``n_terms`` random product pure states with Dirichlet weights."""
    dims = as_dims(dims)
    if n_terms < 1:
        raise InvalidInputError("n_terms must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(n_terms))
    rho = np.zeros((dims.D, dims.D), dtype=complex)
    for p in weights:
        v = random_product_vector(dims, rng)
        rho += p * np.outer(v, v.conj())
    rho /= np.trace(rho).real
    return DensityMatrix(dims, 0.5 * (rho + rho.conj().T))


def detect(W, rho: DensityMatrix) -> float:
    """Tr(W rho); negative means ``rho`` is detected."""
    W = np.asarray(W, dtype=complex)
    if W.shape != rho.matrix.shape:
        raise InvalidInputError(f"witness shape {W.shape} does not match state shape {rho.matrix.shape}")
    return float(np.einsum("ij,ji->", W, rho.matrix).real)
