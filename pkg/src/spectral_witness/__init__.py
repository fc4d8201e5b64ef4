"""Entanglement witnesses from spectral data: construction, k-EW certificates and decomposable splits."""

from .construction import (
    KewCertificate,
    SpectralWitnessSpec,
    assemble_witness,
    certify,
    kew_interval,
    mu_ell,
    random_certified_spec,
)
from .criteria import (
    CriteriaReport,
    DensityMatrix,
    criteria_report,
    detect,
    entropy_check,
    majorization_check,
    ppt_check,
    random_ppt_state,
    random_separable_state,
    reduction_check,
)
from .decomposition import (
    DecompositionResult,
    PositiveMapRep,
    apply_map,
    is_completely_copositive,
    projector_pt_spectrum,
    split_ab,
    to_positive_map,
)
from .errors import InvalidInputError, PreconditionError
from .gallery import ChoKyeParams, cho_kye_classify, cho_kye_spec, flip_spec, reduction_spec, sn_spec
from .linalg import BipartiteDims, haar_basis, hermitian_eig, is_psd, kron, partial_trace, partial_transpose
from .schmidt import BipartiteVector, SchmidtData, k_norm_sq, k_norm_sq_oracle, schmidt_decompose

__version__ = "0.1.0"
