"""
Witnesses built from spectral data and their k-EW certificates.

A witness is fixed by an orthonormal basis psi_1..psi_D of the bipartite
space, magnitudes lambda_alpha >= 0 and a split index L:

    W = sum_{alpha > L} lambda_alpha P_alpha - sum_{alpha <= L} lambda_alpha P_alpha

Certification at level k compares min_{alpha > L} lambda_alpha with

    mu_k = sum_{alpha<=L} lambda_alpha ||psi_alpha||_k^2 / (1 - sum_{alpha<=L} ||psi_alpha||_k^2)

``lambda >= mu_k`` certifies a k-EW; ``mu_{k+1} > lambda`` certifies that W is
not a (k+1)-EW.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidInputError, PreconditionError
from .linalg import BipartiteDims, as_dims, haar_unitary
from .schmidt import BipartiteVector, k_norms_sq

ORTHONORMAL_TOL = 1e-10
# Relative slack on the mu comparisons. mu is a quotient of SVD outputs, so the
# boundary cases lambda == mu land a few ulps either side of equality.
COMPARE_RTOL = 1e-12
# Denominators at or below this are treated as zero: at level d the k-norms are
# exactly 1 and roundoff must not turn 1 - 1 into a tiny positive number.
DENOM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralWitnessSpec:
    dims: BipartiteDims
    basis: list = field(repr=False)
    lambdas: np.ndarray = field(repr=False)
    L: int = 1

    def __post_init__(self):
        dims = as_dims(self.dims)
        object.__setattr__(self, "dims", dims)
        basis = [v if isinstance(v, BipartiteVector) else BipartiteVector(dims, v) for v in self.basis]
        object.__setattr__(self, "basis", basis)
        lam = np.asarray(self.lambdas, dtype=float).reshape(-1)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "L", int(self.L))
        validate_spec(self)

    @property
    def D(self) -> int:
        return self.dims.D

    def basis_matrix(self) -> np.ndarray:
        """Basis vectors as columns."""
        return np.column_stack([v.amplitudes for v in self.basis])

    @property
    def negative_part(self) -> np.ndarray:
        return self.lambdas[: self.L]

    @property
    def positive_part(self) -> np.ndarray:
        return self.lambdas[self.L :]


def validate_spec(spec: SpectralWitnessSpec) -> None:
    D = spec.dims.D
    if len(spec.basis) != D:
        raise InvalidInputError(f"basis must contain {D} vectors, got {len(spec.basis)}")
    if any(v.dims != spec.dims for v in spec.basis):
        raise InvalidInputError("basis vectors must share the witness dimensions")
    if spec.lambdas.size != D:
        raise InvalidInputError(f"expected {D} magnitudes, got {spec.lambdas.size}")
    if not 0 < spec.L < D:
        raise InvalidInputError(f"split index must satisfy 0 < L < {D}, got {spec.L}")
    if not np.all(np.isfinite(spec.lambdas)) or np.any(spec.lambdas < 0):
        raise InvalidInputError("magnitudes must be finite and nonnegative")
    if np.any(spec.lambdas[spec.L :] <= 0):
        raise InvalidInputError("magnitudes above the split index must be strictly positive")
    U = spec.basis_matrix()
    resid = np.abs(U.conj().T @ U - np.eye(D)).max()
    if resid > ORTHONORMAL_TOL:
        raise InvalidInputError(f"basis is not orthonormal (Gram residual {resid:.3e})")


def _norm_table(spec: SpectralWitnessSpec) -> np.ndarray:
    """Row alpha holds ||psi_alpha||_k^2 for k = 1..d, alpha <= L. Computed once per spec."""
    table = spec.__dict__.get("_norm_table")
    if table is None:
        table = np.array([k_norms_sq(v) for v in spec.basis[: spec.L]])
        object.__setattr__(spec, "_norm_table", table)
    return table


def _norm_sums(spec: SpectralWitnessSpec, ell: int):
    d = spec.dims.d
    if int(ell) != ell or not 1 <= ell <= d:
        raise InvalidInputError(f"level must be in [1, {d}], got {ell}")
    norms = _norm_table(spec)[:, ell - 1]
    return float(np.dot(spec.negative_part, norms)), float(np.sum(norms))


def mu_denominator(spec: SpectralWitnessSpec, ell: int) -> float:
    """1 - sum_{alpha<=L} ||psi_alpha||_ell^2; mu_ell is defined only when this exceeds DENOM_TOL."""
    return 1.0 - _norm_sums(spec, ell)[1]


def mu_ell(spec: SpectralWitnessSpec, ell: int) -> float:
    numer, total = _norm_sums(spec, ell)
    denom = 1.0 - total
    if denom <= DENOM_TOL:
        raise PreconditionError(f"mu_{ell} undefined: denominator {denom:.17g} <= 0", denom)
    return numer / denom


def mu_or_none(spec: SpectralWitnessSpec, ell: int) -> Optional[float]:
    try:
        return mu_ell(spec, ell)
    except PreconditionError:
        return None


def assemble_witness(spec: SpectralWitnessSpec) -> np.ndarray:
    validate_spec(spec)
    U = spec.basis_matrix()
    signed = np.concatenate([-spec.negative_part, spec.positive_part])
    W = (U * signed) @ U.conj().T
    return 0.5 * (W + W.conj().T)


def lambda_ge(lam: float, mu: float) -> bool:
    return lam >= mu - COMPARE_RTOL * max(1.0, abs(mu))


def lambda_lt(lam: float, mu: float) -> bool:
    return mu > lam + COMPARE_RTOL * max(1.0, abs(mu))


@dataclass(frozen=True)
class KewCertificate:
    k: int
    denom_k: float
    mu_k: Optional[float]
    t1_holds: Optional[bool]
    denom_k_plus_1: Optional[float] = None
    mu_k_plus_1: Optional[float] = None
    t2_holds: Optional[bool] = None

    @property
    def t1_applicable(self) -> bool:
        return self.mu_k is not None

    @property
    def t2_applicable(self) -> bool:
        return self.mu_k_plus_1 is not None

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "denom_k": self.denom_k,
            "mu_k": self.mu_k,
            "t1": "n/a" if self.t1_holds is None else self.t1_holds,
            "denom_k_plus_1": self.denom_k_plus_1,
            "mu_k_plus_1": self.mu_k_plus_1,
            "t2": "n/a" if self.t2_holds is None else self.t2_holds,
        }


def certify(spec: SpectralWitnessSpec, k: int) -> KewCertificate:
    """
    Evaluate the k-EW condition and, when k < d, the not-(k+1)-EW condition.

    A condition whose denominator is not positive is reported as not
    applicable (``None``) rather than as a verdict.
    """
    d = spec.dims.d
    if int(k) != k or not 1 <= k <= d:
        raise InvalidInputError(f"k must be in [1, {d}], got {k}")
    lam_min = float(spec.positive_part.min())
    denom = mu_denominator(spec, k)
    mu = mu_or_none(spec, k)
    t1 = None if mu is None else lambda_ge(lam_min, mu)
    denom2 = mu2 = t2 = None
    if k < d:
        denom2 = mu_denominator(spec, k + 1)
        mu2 = mu_or_none(spec, k + 1)
        t2 = None if mu2 is None else lambda_lt(lam_min, mu2)
    return KewCertificate(k, denom, mu, t1, denom2, mu2, t2)


@dataclass(frozen=True)
class KewInterval:
    """Largest certified level and how the next level was excluded."""

    k_max: int
    not_next: bool
    reason: str


def kew_interval(spec: SpectralWitnessSpec) -> KewInterval:
    """
    Largest k with a k-EW certificate, and whether W is shown not to be a
    (k_max+1)-EW.

    The exclusion comes from the mu_{k+1} condition when its denominator is
    positive. At k_max + 1 = d that denominator can vanish; W is then
    excluded directly, since a d-EW is a positive operator and W has a
    strictly negative eigenvalue whenever some lambda_alpha (alpha <= L) is
    positive. ``k_max = 0`` means no level is certified.
    """
    d = spec.dims.d
    k_max = 0
    for k in range(1, d + 1):
        if certify(spec, k).t1_holds:
            k_max = k
        else:
            break
    if k_max == 0:
        return KewInterval(0, False, "no level certified")
    if k_max == d:
        return KewInterval(d, False, "certified at the maximal Schmidt rank")
    cert = certify(spec, k_max)
    if cert.t2_holds:
        return KewInterval(k_max, True, f"mu_{k_max + 1} > min lambda")
    if cert.t2_holds is None and k_max + 1 == d and np.any(spec.negative_part > 0):
        return KewInterval(k_max, True, "negative eigenvalue, not positive semidefinite")
    return KewInterval(k_max, False, "next level undecided")


MAX_DRAWS = 1000


def _bell_frame(dims: BipartiteDims) -> np.ndarray:
    """Generalized Bell vectors on the d x d corner as the first d^2 columns, zeros elsewhere."""
    d, D = dims.d, dims.D
    omega = np.exp(2j * np.pi / d)
    F = np.zeros((D, D), dtype=complex)
    for a in range(d):
        for b in range(d):
            for j in range(d):
                F[j * dims.dB + (j + a) % d, a * d + b] = omega ** (b * j) / np.sqrt(d)
    return F


def _draw_basis(dims: BipartiteDims, rng) -> np.ndarray:
    # Haar frames rarely hold several strongly entangled vectors, so draws are
    # centred on a locally rotated Bell frame with a random (unbounded) noise
    # strength; large strengths approach the Haar ensemble.
    D = dims.D
    t = rng.random()
    G = (rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))) / np.sqrt(2)
    Q, R = np.linalg.qr(_bell_frame(dims) + (t / (1 - t)) * G)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    local = np.kron(haar_unitary(dims.dA, int(rng.integers(2**63))), haar_unitary(dims.dB, int(rng.integers(2**63))))
    return local @ Q


def random_certified_spec(dims, L: int, seed: int, k: int = 1, exclude_next: bool = False) -> SpectralWitnessSpec:
    """
    Random spec that passes the k-EW condition by construction.

    The basis is a perturbed, locally rotated Bell frame; the L vectors with the smallest 1-norms go into
    the negative block with magnitudes uniform in (0, 1]. Magnitudes above the
    split are uniform in [mu_k, 2 mu_k], or in [mu_k, mu_{k+1}) when
    ``exclude_next`` is set so that W is also shown not to be a (k+1)-EW.
    Draws whose mu_k (or mu_{k+1}) is undefined are rejected and redrawn from
    the same generator, so the output is a deterministic function of ``seed``.
    """
    dims = as_dims(dims)
    D = dims.D
    if not 0 < L < D:
        raise InvalidInputError(f"split index must satisfy 0 < L < {D}, got {L}")
    if exclude_next and k + 1 >= dims.d:
        # mu_d has denominator 1 - sum ||psi_alpha||_d^2 = 1 - L <= 0
        raise InvalidInputError("level k + 1 must be below the maximal Schmidt rank to be excluded")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_DRAWS):
        U = _draw_basis(dims, rng)
        vecs = [BipartiteVector(dims, U[:, a]) for a in range(D)]
        order = np.argsort([k_norms_sq(v)[0] for v in vecs], kind="stable")
        basis = [vecs[a] for a in order]
        lambdas = np.ones(D)
        lambdas[:L] = 1.0 - rng.random(L)
        probe = SpectralWitnessSpec(dims, basis, lambdas, L)
        mu = mu_or_none(probe, k)
        if mu is None:
            continue
        if exclude_next:
            mu_next = mu_or_none(probe, k + 1)
            if mu_next is None or not mu_next > mu * (1 + 1e-6):
                continue
            hi = mu_next
        else:
            hi = 2 * mu
        # keep the draw strictly inside the band so the comparisons are not at the edge
        lambdas[L:] = mu + (hi - mu) * (1e-6 + (1 - 2e-6) * rng.random(D - L))
        return SpectralWitnessSpec(dims, basis, lambdas, L)
    raise PreconditionError(f"no admissible spec found in {MAX_DRAWS} draws for L = {L}", L)
