"""Worked witness families: flip, reduction, the p-family and W[a,b,c] on C^3 (x) C^3."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .construction import COMPARE_RTOL, SpectralWitnessSpec
from .errors import InvalidInputError
from .linalg import BipartiteDims, maximally_entangled


def _e(D, *idx):
    v = np.zeros(D, dtype=complex)
    for i in idx:
        v[i] = 1.0
    return v


def flip_spec() -> SpectralWitnessSpec:
    r2 = np.sqrt(2.0)
    basis = [
        (_e(4, 1) - _e(4, 2)) / r2,
        (_e(4, 1) + _e(4, 2)) / r2,
        _e(4, 0),
        _e(4, 3),
    ]
    return SpectralWitnessSpec(BipartiteDims(2, 2), basis, [1.0, 1.0, 1.0, 1.0], L=1)


def phased_max_entangled(d: int, m: int) -> np.ndarray:
    """(1/sqrt(d)) sum_j exp(2 pi i j m / d) |jj>."""
    v = np.zeros(d * d, dtype=complex)
    for j in range(d):
        v[j * d + j] = np.exp(2j * np.pi * j * m / d)
    return v / np.sqrt(d)


def _reduction_basis(d: int) -> list:
    basis = [maximally_entangled(d)]
    basis += [phased_max_entangled(d, m) for m in range(1, d)]
    basis += [_e(d * d, i * d + j) for i in range(d) for j in range(d) if i != j]
    return basis


def reduction_spec(d: int) -> SpectralWitnessSpec:
    """W = I - d P+_d: lambda_1 = d - 1 on the maximally entangled vector, 1 elsewhere."""
    return sn_spec(d, 1.0)


def sn_spec(d: int, p: float) -> SpectralWitnessSpec:
    """Reduction witness with the negative magnitude replaced by p d - 1."""
    if int(d) != d or d < 2:
        raise InvalidInputError(f"d must be an integer >= 2, got {d}")
    lam1 = p * d - 1
    if lam1 < 0:
        raise InvalidInputError(f"p = {p} gives a negative magnitude p*d - 1 = {lam1}")
    lambdas = np.ones(d * d)
    lambdas[0] = lam1
    return SpectralWitnessSpec(BipartiteDims(d, d), _reduction_basis(d), lambdas, L=1)


@dataclass(frozen=True)
class ChoKyeParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise InvalidInputError("a, b, c must be nonnegative")


def cho_kye_matrix(a: float, b: float, c: float) -> np.ndarray:
    """The 9x9 operator W[a,b,c] written out entrywise."""
    W = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        W[4 * i, 4 * i] = a
        W[3 * i + (i + 1) % 3, 3 * i + (i + 1) % 3] = b
        W[3 * i + (i + 2) % 3, 3 * i + (i + 2) % 3] = c
    for i, j in [(0, 4), (0, 8), (4, 8)]:
        W[i, j] = W[j, i] = -1
    return W


def cho_kye_spec(params: ChoKyeParams) -> SpectralWitnessSpec:
    """
    Spectral data of W[a,b,c].

    The negative magnitude 2 - a sits on the maximally entangled vector.
    Eigenvectors with magnitude zero (b = 0 or c = 0) are placed in the
    negative block with lambda = 0, so the block above the split stays
    strictly positive.
    """
    a, b, c = params.a, params.b, params.c
    if a > 2:
        raise InvalidInputError(f"a must be <= 2, got {a}")
    w = np.exp(2j * np.pi / 3)
    phased = _e(9, 0) + w * _e(9, 4) + w**2 * _e(9, 8)
    entries = [
        (2 - a, maximally_entangled(3)),
        (a + 1, phased / np.sqrt(3)),
        (a + 1, phased.conj() / np.sqrt(3)),
    ]
    entries += [(b, _e(9, i)) for i in (1, 5, 6)]  # |12>, |23>, |31>
    entries += [(c, _e(9, i)) for i in (2, 3, 7)]  # |13>, |21>, |32>
    negative = [entries[0]] + [t for t in entries[1:] if t[0] == 0]
    positive = [t for t in entries[1:] if t[0] != 0]
    ordered = negative + positive
    return SpectralWitnessSpec(
        BipartiteDims(3, 3), [v for _, v in ordered], [lam for lam, _ in ordered], L=len(negative)
    )


@dataclass(frozen=True)
class ChoKyeClassification:
    is_ew: bool
    spectral_class_member: bool
    is_decomposable_region: bool
    is_2ew_class: bool
    pt_positive: bool


def _ge(x, y) -> bool:
    return x >= y - COMPARE_RTOL * max(1.0, abs(y))


def cho_kye_classify(params: ChoKyeParams) -> ChoKyeClassification:
    a, b, c = params.a, params.b, params.c
    half = (2 - a) / 2
    is_ew = 0 <= a < 2 and _ge(a + b + c, 2) and (a > 1 or _ge(b * c, (1 - a) ** 2))
    member = 0 <= a < 2 and _ge(b, half) and _ge(c, half)
    decomposable = a >= 0 and _ge(b * c, half * half)
    two_ew = 1 <= a < 2 and _ge(b, 2 * (2 - a)) and _ge(c, 2 * (2 - a))
    pt_pos = _ge(b, half) and _ge(c, half) and _ge(b * c, 1)
    return ChoKyeClassification(is_ew, member, decomposable, two_ew, pt_pos)
