"""
Explicit decomposable split of spectral-class witnesses.

With mu = mu_1 the witness splits as W = A + B where

    A = sum_{alpha > L} (lambda_alpha - mu) P_alpha
    B = mu * I - sum_{alpha <= L} (lambda_alpha + mu) P_alpha

A is positive whenever every lambda_alpha (alpha > L) is at least mu, and the
partial transpose of B is bounded below by
``mu - sum_{alpha<=L} (lambda_alpha + mu) ||psi_alpha||_1^2 >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .construction import SpectralWitnessSpec, mu_ell
from .errors import InvalidInputError
from .linalg import DEFAULT_TOL, BipartiteDims, as_dims, eigvalsh, is_psd, partial_trace, partial_transpose
from .schmidt import BipartiteVector, k_norm_sq, schmidt_coefficients

SATURATION_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    mu1: float
    min_eig_A: float
    min_eig_B_pt: float
    b_min_bound: float
    saturated: bool
    scale: float
    tol: float = DEFAULT_TOL

    @property
    def A_positive(self) -> bool:
        return self.min_eig_A >= -self.tol * self.scale

    @property
    def B_pt_positive(self) -> bool:
        return self.min_eig_B_pt >= -self.tol * self.scale

    @property
    def decomposable(self) -> bool:
        """Both halves of the split verified positive (A, and B under partial transpose)."""
        return self.A_positive and self.B_pt_positive


def is_saturated(spec: SpectralWitnessSpec, mu1: Optional[float] = None) -> bool:
    """True when every lambda_alpha with alpha > L equals mu_1."""
    if mu1 is None:
        mu1 = mu_ell(spec, 1)
    return bool(np.abs(spec.positive_part - mu1).max() <= SATURATION_RTOL * max(1.0, mu1))


def split_ab(spec: SpectralWitnessSpec, tol: float = DEFAULT_TOL) -> DecompositionResult:
    mu1 = mu_ell(spec, 1)
    U = spec.basis_matrix()
    L = spec.L
    Up, Un = U[:, L:], U[:, :L]
    A = (Up * (spec.positive_part - mu1)) @ Up.conj().T
    B = mu1 * np.eye(spec.D) - (Un * (spec.negative_part + mu1)) @ Un.conj().T
    A = 0.5 * (A + A.conj().T)
    B = 0.5 * (B + B.conj().T)
    min_a = float(eigvalsh(A)[0])
    min_bpt = float(eigvalsh(partial_transpose(B, spec.dims))[0])
    norms1 = np.array([k_norm_sq(v, 1) for v in spec.basis[:L]])
    bound = float(mu1 - np.dot(spec.negative_part + mu1, norms1))
    scale = max(1.0, float(np.abs(np.concatenate([spec.lambdas, [mu1]])).max()))
    return DecompositionResult(A, B, mu1, min_a, min_bpt, bound, is_saturated(spec, mu1), scale, tol)


def projector_pt_spectrum(psi: BipartiteVector) -> np.ndarray:
    """
    Spectrum of the partial transpose of |psi><psi| from the Schmidt coefficients.

    The nonzero part is {s_a^2} together with {+s_a s_b, -s_a s_b : a < b};
    the rest is padded with zeros. Returned in ascending order.
    """
    if psi.norm == 0:
        raise InvalidInputError("zero vector")
    s = schmidt_coefficients(psi)
    vals = list(s**2)
    for a in range(len(s)):
        for b in range(a + 1, len(s)):
            vals += [s[a] * s[b], -s[a] * s[b]]
    vals += [0.0] * (psi.dims.D - len(vals))
    return np.sort(np.array(vals))


@dataclass(frozen=True, eq=False)
class PositiveMapRep:
    """X -> mu1 * Tr(X) I_B - sum_alpha weight_alpha F_alpha X F_alpha^dagger."""

    dims: BipartiteDims
    mu1: float
    kraus_terms: list = field(repr=False)
    kappa: Optional[float] = None


def kraus_operator(psi: BipartiteVector) -> np.ndarray:
    """The dB x dA operator F with psi = sum_i e_i (x) F e_i."""
    return psi.matrix().T.copy()


def to_positive_map(spec: SpectralWitnessSpec) -> PositiveMapRep:
    mu1 = mu_ell(spec, 1)
    terms = [(float(lam + mu1), kraus_operator(v)) for lam, v in zip(spec.negative_part, spec.basis[: spec.L])]
    kappa = None
    if spec.L == 1:
        lam1 = float(spec.lambdas[0])
        # lambda_1 = 0 forces mu_1 = 0; use the limiting value ||psi_1||_1^2
        kappa = mu1 / (mu1 + lam1) if lam1 > 0 else k_norm_sq(spec.basis[0], 1)
    return PositiveMapRep(spec.dims, mu1, terms, kappa)


def apply_map(rep: PositiveMapRep, X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    dA, dB = rep.dims.dA, rep.dims.dB
    if X.shape != (dA, dA):
        raise InvalidInputError(f"input must be {dA}x{dA}, got {X.shape}")
    out = rep.mu1 * np.trace(X) * np.eye(dB, dtype=complex)
    for w, F in rep.kraus_terms:
        out -= w * (F @ X @ F.conj().T)
    return out


def map_from_witness(W, dims, X) -> np.ndarray:
    """The map X -> Tr_A(W (X^T (x) I_B)) associated with an operator W."""
    dims = as_dims(dims)
    X = np.asarray(X, dtype=complex)
    if X.shape != (dims.dA, dims.dA):
        raise InvalidInputError(f"input must be {dims.dA}x{dims.dA}, got {X.shape}")
    return partial_trace(np.asarray(W) @ np.kron(X.T, np.eye(dims.dB)), dims, "A")


def is_completely_copositive(W, dims, tol: float = DEFAULT_TOL) -> bool:
    return is_psd(partial_transpose(W, dims), tol)[0]


def witness_from_pt(B, dims) -> np.ndarray:
    """For saturated specs W = Q^Gamma with Q = B^Gamma; returns (B^Gamma)^Gamma."""
    return partial_transpose(partial_transpose(B, dims), dims)

