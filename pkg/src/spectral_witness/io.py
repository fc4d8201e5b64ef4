"""
Text formats for matrices, vectors, witness specs, states and reports.

Documents are JSON objects. Every float is written with 17 significant
digits so that parsing returns the identical double.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .construction import SpectralWitnessSpec
from .criteria import DensityMatrix
from .errors import InvalidInputError
from .linalg import BipartiteDims
from .schmidt import BipartiteVector


def _fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"cannot serialize non-finite value {x}")
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def _scalar(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return _fmt_float(x)
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"unsupported value {type(x).__name__}")


def dumps(obj, indent: int = 0) -> str:
    """Serialize nested dicts/lists; lists of scalars stay on one line."""
    pad = "  " * indent
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        items = [pad + "  " + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar(obj)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed document: {exc}") from None


def _field(doc, name):
    if not isinstance(doc, dict) or name not in doc:
        raise InvalidInputError(f"missing field {name!r}")
    return doc[name]


def _real_list(doc, name, n=None):
    vals = _field(doc, name)
    if not isinstance(vals, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals):
        raise InvalidInputError(f"field {name!r} must be a list of numbers")
    if n is not None and len(vals) != n:
        raise InvalidInputError(f"field {name!r} must have {n} entries, got {len(vals)}")
    return np.array(vals, dtype=float)


def _posint(doc, name):
    v = _field(doc, name)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise InvalidInputError(f"field {name!r} must be a positive integer")
    return v


def matrix_to_doc(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"rows": M.shape[0], "cols": M.shape[1], "re": M.real.reshape(-1), "im": M.imag.reshape(-1)}


def matrix_from_doc(doc) -> np.ndarray:
    rows, cols = _posint(doc, "rows"), _posint(doc, "cols")
    re = _real_list(doc, "re", rows * cols)
    im = _real_list(doc, "im", rows * cols)
    return (re + 1j * im).reshape(rows, cols)


def vector_to_doc(psi: BipartiteVector) -> dict:
    return {"dA": psi.dims.dA, "dB": psi.dims.dB, "re": psi.amplitudes.real, "im": psi.amplitudes.imag}


def vector_from_doc(doc) -> BipartiteVector:
    dims = BipartiteDims(_posint(doc, "dA"), _posint(doc, "dB"))
    re = _real_list(doc, "re", dims.D)
    im = _real_list(doc, "im", dims.D)
    return BipartiteVector(dims, re + 1j * im)


def spec_to_doc(spec: SpectralWitnessSpec) -> dict:
    return {
        "dA": spec.dims.dA,
        "dB": spec.dims.dB,
        "L": spec.L,
        "lambdas": spec.lambdas,
        "basis": [vector_to_doc(v) for v in spec.basis],
    }


def spec_from_doc(doc) -> SpectralWitnessSpec:
    dims = BipartiteDims(_posint(doc, "dA"), _posint(doc, "dB"))
    L = _posint(doc, "L")
    lambdas = _real_list(doc, "lambdas", dims.D)
    basis = _field(doc, "basis")
    if not isinstance(basis, list):
        raise InvalidInputError("field 'basis' must be a list of vectors")
    vectors = [vector_from_doc(v) for v in basis]
    if any(v.dims != dims for v in vectors):
        raise InvalidInputError("basis vector dimensions do not match the spec")
    return SpectralWitnessSpec(dims, vectors, lambdas, L)


def state_to_doc(rho: DensityMatrix) -> dict:
    return {"dA": rho.dims.dA, "dB": rho.dims.dB, **matrix_to_doc(rho.matrix)}


def state_from_doc(doc) -> DensityMatrix:
    dims = BipartiteDims(_posint(doc, "dA"), _posint(doc, "dB"))
    return DensityMatrix(dims, matrix_from_doc(doc))


def read_doc(path: str):
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None


def write_doc(path: str, doc) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(doc) + "\n")
