import json

import numpy as np
import pytest

from conftest import random_unit_vector
from spectral_witness import io
from spectral_witness.cli import main
from spectral_witness.construction import random_certified_spec
from spectral_witness.criteria import pure_state, random_ppt_state
from spectral_witness.errors import InvalidInputError
from spectral_witness.gallery import ChoKyeParams, cho_kye_spec, reduction_spec
from spectral_witness.linalg import maximally_entangled


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    path = tmp_path / name
    io.write_doc(str(path), doc)
    return str(path)


def test_dumps_floats_round_trip_exactly():
    xs = [0.1, 1 / 3, -2.5e-300, 1e22, 0.0, 123456789.123456789]
    assert io.loads(io.dumps(xs)) == xs


def test_dumps_rejects_nan():
    with pytest.raises(InvalidInputError):
        io.dumps([float("nan")])


def test_loads_malformed():
    with pytest.raises(InvalidInputError):
        io.loads("{not json")


def test_matrix_round_trip(rng):
    M = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    back = io.matrix_from_doc(io.loads(io.dumps(io.matrix_to_doc(M))))
    assert np.abs(back - M).max() <= 1e-15


def test_vector_round_trip(rng):
    psi = random_unit_vector(rng, 3, 4)
    back = io.vector_from_doc(io.loads(io.dumps(io.vector_to_doc(psi))))
    assert back.dims == psi.dims
    assert np.abs(back.amplitudes - psi.amplitudes).max() <= 1e-15


def test_spec_round_trip():
    for spec in (reduction_spec(3), cho_kye_spec(ChoKyeParams(1, 1, 0)), random_certified_spec((2, 3), 1, 7)):
        back = io.spec_from_doc(io.loads(io.dumps(io.spec_to_doc(spec))))
        assert back.L == spec.L and back.dims == spec.dims
        assert np.abs(back.lambdas - spec.lambdas).max() <= 1e-15
        assert np.abs(back.basis_matrix() - spec.basis_matrix()).max() <= 1e-15


def test_state_round_trip():
    rho = random_ppt_state((3, 3), 2)
    back = io.state_from_doc(io.loads(io.dumps(io.state_to_doc(rho))))
    assert np.abs(back.matrix - rho.matrix).max() <= 1e-15


@pytest.mark.parametrize(
    "doc",
    [
        {"rows": 2, "cols": 2, "re": [1, 0, 0], "im": [0, 0, 0, 0]},
        {"rows": 0, "cols": 2, "re": [], "im": []},
        {"rows": 1, "cols": 1, "re": ["x"], "im": [0]},
        {"cols": 1, "re": [1], "im": [0]},
        [1, 2, 3],
    ],
)
def test_matrix_doc_rejected(doc):
    with pytest.raises(InvalidInputError):
        io.matrix_from_doc(doc)


def test_cli_gallery_flip(capsys):
    code, out, _ = run(capsys, "gallery", "flip")
    assert code == 0
    spec = io.spec_from_doc(json.loads(out))
    assert spec.dims.D == 4 and spec.L == 1


def test_cli_gallery_invalid_parameter(capsys):
    code, out, err = run(capsys, "gallery", "sn", "--d", 3, "--p", 0.2)
    assert code == 2 and out == "" and err.startswith("error:")


def test_cli_certify_reduction(capsys, tmp_path):
    path = write(tmp_path, "r3.json", io.spec_to_doc(reduction_spec(3)))
    code, out, _ = run(capsys, "certify", "--spec", path, "--k", 1)
    rep = json.loads(out)
    assert code == 0
    assert rep["mu_k"] == pytest.approx(1, abs=1e-12)
    assert rep["t1"] is True and rep["t2"] is True
    assert rep["mu_k_plus_1"] == pytest.approx(4, abs=1e-12)
    assert rep["certified_k_max"] == 1 and rep["not_k_max_plus_1"] is True


def test_cli_certify_not_applicable(capsys, tmp_path):
    path = write(tmp_path, "choi.json", io.spec_to_doc(cho_kye_spec(ChoKyeParams(1, 1, 0))))
    code, out, _ = run(capsys, "certify", "--spec", path, "--k", 1)
    assert code == 0 and json.loads(out)["t1"] == "n/a"


def test_cli_decompose_chokye(capsys, tmp_path):
    path = write(tmp_path, "ck.json", io.spec_to_doc(cho_kye_spec(ChoKyeParams(1, 1, 1))))
    code, out, _ = run(capsys, "decompose", "--spec", path)
    rep = json.loads(out)
    assert code == 0
    assert rep["saturated"] is False
    assert rep["min_eig_A"] >= -1e-12 and rep["min_eig_B_pt"] >= -1e-12
    assert rep["decomposable"] is True
    A, B = io.matrix_from_doc(rep["A"]), io.matrix_from_doc(rep["B"])
    assert A.shape == B.shape == (9, 9)


def test_cli_decompose_undefined_mu(capsys, tmp_path):
    path = write(tmp_path, "choi.json", io.spec_to_doc(cho_kye_spec(ChoKyeParams(1, 1, 0))))
    code, _, err = run(capsys, "decompose", "--spec", path)
    assert code == 2 and "mu_1" in err


def test_cli_knorm(capsys, tmp_path):
    from spectral_witness.schmidt import BipartiteVector
    from spectral_witness.linalg import BipartiteDims

    path = write(tmp_path, "v.json", io.vector_to_doc(BipartiteVector(BipartiteDims(3, 3), maximally_entangled(3))))
    code, out, _ = run(capsys, "knorm", "--vec", path, "--k", 2, "--oracle", "--restarts", 8, "--seed", 1)
    rep = json.loads(out)
    assert code == 0
    assert rep["k_norm_sq"] == pytest.approx(2 / 3, abs=1e-14)
    assert rep["oracle_k_norm_sq"] == pytest.approx(2 / 3, abs=1e-6)
    assert rep["schmidt_rank"] == 3
    code, _, _ = run(capsys, "knorm", "--vec", path, "--k", 2, "--oracle")
    assert code == 2


def test_cli_detect_and_tests(capsys, tmp_path):
    spec_path = write(tmp_path, "r2.json", io.spec_to_doc(reduction_spec(2)))
    state = pure_state(maximally_entangled(2), (2, 2))
    state_path = write(tmp_path, "s.json", io.state_to_doc(state))
    code, out, _ = run(capsys, "detect", "--witness", spec_path, "--state", state_path)
    rep = json.loads(out)
    assert code == 0 and rep["detected"] is True
    assert rep["trace_W_rho"] == pytest.approx(-1, abs=1e-12)
    code, out, _ = run(capsys, "tests", "--state", state_path)
    rep = json.loads(out)
    assert code == 0 and rep["ppt"] is False and rep["majorization"] is False


def test_cli_detect_with_matrix_file(capsys, tmp_path):
    W = np.eye(4) - 2 * np.outer(maximally_entangled(2), maximally_entangled(2))
    w_path = write(tmp_path, "w.json", io.matrix_to_doc(W))
    s_path = write(tmp_path, "s.json", io.state_to_doc(random_ppt_state((2, 2), 0)))
    code, out, _ = run(capsys, "detect", "--witness", w_path, "--state", s_path)
    assert code == 0 and json.loads(out)["detected"] is False


def test_cli_map(capsys, tmp_path):
    spec_path = write(tmp_path, "r3.json", io.spec_to_doc(reduction_spec(3)))
    x_path = write(tmp_path, "x.json", io.matrix_to_doc(np.eye(3)))
    code, out, _ = run(capsys, "map", "--spec", spec_path, "--input", x_path)
    rep = json.loads(out)
    assert code == 0
    assert np.abs(io.matrix_from_doc(rep) - 2 * np.eye(3)).max() < 1e-12
    assert rep["output_psd"] is True
    assert rep["kappa"] == pytest.approx(1 / 3, abs=1e-15)


def test_cli_random_commands_valid(capsys):
    code, out, _ = run(capsys, "random-witness", "--dA", 3, "--dB", 3, "--L", 2, "--seed", 11)
    assert code == 0
    io.spec_from_doc(json.loads(out))
    code, out, _ = run(capsys, "random-state", "--separable", "--terms", 3, "--dA", 2, "--dB", 3, "--seed", 1)
    assert code == 0
    assert io.state_from_doc(json.loads(out)).dims.D == 6
    code, _, err = run(capsys, "random-state", "--separable", "--dA", 2, "--dB", 2, "--seed", 1)
    assert code == 2 and "--terms" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["certify", "--spec", "/nonexistent/file.json", "--k", "1"],
        ["random-witness", "--dA", "2", "--dB", "2", "--L", "0", "--seed", "1"],
        ["random-state", "--dA", "2", "--dB", "2", "--seed", "1"],
    ],
)
def test_cli_invalid_input_exits_2(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().out == ""


def test_cli_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, out, err = run(capsys, "certify", "--spec", bad, "--k", 1)
    assert code == 2 and out == "" and "malformed" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["random-witness", "--dA", 3, "--dB", 4, "--L", 1, "--seed", 5],
        ["random-state", "--ppt", "--dA", 3, "--dB", 3, "--seed", 5],
        ["random-state", "--separable", "--terms", 4, "--dA", 2, "--dB", 4, "--seed", 5],
        ["gallery", "chokye", "--a", 0.5, "--b", 1, "--c", 2],
    ],
)
def test_cli_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first[1] == second[1]


def test_cli_tolerance_flag(capsys, tmp_path):
    path = write(tmp_path, "r3.json", io.spec_to_doc(reduction_spec(3)))
    code, out, _ = run(capsys, "--tol", 1e-6, "decompose", "--spec", path)
    assert code == 0 and json.loads(out)["saturated"] is True
