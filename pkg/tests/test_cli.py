import json
import subprocess
import sys

import numpy as np
import pytest

from projpair import IntertwinerParams, decompose, full_intertwiner
from projpair.cli import main
from projpair.errors import MatrixFileError
from projpair.fileio import (
    read_decomposition,
    read_matrix,
    read_params,
    write_decomposition,
    write_matrix,
    write_params,
)

from conftest import FIXTURES, ROT_Q


# -- file formats -----------------------------------------------------------

def test_read_one_by_one(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows":1,"cols":1,"data":[[[1.0,0.0]]]}')
    np.testing.assert_array_equal(read_matrix(path), np.eye(1))


def test_matrix_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    m = rng.standard_normal((4, 3)) * 10.0 ** rng.integers(-300, 300, (4, 3)) \
        + 1j * rng.standard_normal((4, 3))
    for mat in (ROT_Q, m, np.zeros((0, 0))):
        path = tmp_path / "m.json"
        write_matrix(path, mat)
        back = read_matrix(path)
        assert back.shape == np.shape(mat)
        assert np.array_equal(back, np.asarray(mat, dtype=complex))


@pytest.mark.parametrize("text", [
    '{"rows":2,"cols":2,"data":[[[1,0],[0,0]],[[0,0]]]}',
    '{"rows":1,"cols":1,"data":[[[1,0,0]]]}',
    '{"rows":1,"cols":1}',
    '{"rows":1,"cols":1,"data":[[["a",0]]]}',
    'not json',
])
def test_read_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(MatrixFileError):
        read_matrix(path)


def test_decomposition_file_round_trip(tmp_path):
    dec = decompose(FIXTURES["D"]())
    path = tmp_path / "dec.json"
    write_decomposition(path, dec)
    back = read_decomposition(path)
    assert back.dims == dec.dims
    assert np.array_equal(back.basis, dec.basis)
    assert np.array_equal(back.q0_eigs, dec.q0_eigs)
    assert np.array_equal(back.d_unitary, dec.d_unitary)
    obj = json.loads(path.read_text())
    assert set(obj) >= {"dims", "q0_eigenvalues", "basis", "d_unitary", "tol", "residuals"}


def test_decomposition_file_rejects_inconsistent(tmp_path):
    dec = decompose(FIXTURES["C"]())
    path = tmp_path / "dec.json"
    write_decomposition(path, dec)
    obj = json.loads(path.read_text())
    obj["dims"] = [0, 0, 0, 0, 1, 2]
    path.write_text(json.dumps(obj))
    with pytest.raises(MatrixFileError):
        read_decomposition(path)


def test_params_file_round_trip(tmp_path):
    params = IntertwinerParams(c2=np.eye(1), c3=-np.eye(1))
    path = tmp_path / "params.json"
    write_params(path, params)
    back = read_params(path)
    assert np.array_equal(back.c2, params.c2) and np.array_equal(back.c3, params.c3)
    assert back.u0 is None


# -- command line -----------------------------------------------------------

@pytest.fixture
def write_pair(tmp_path):
    def _write(name):
        pair = FIXTURES[name]()
        p, q = tmp_path / f"{name}_P.json", tmp_path / f"{name}_Q.json"
        write_matrix(p, pair.P)
        write_matrix(q, pair.Q)
        return str(p), str(q)
    return _write


def lines(out):
    return dict(line.split(": ", 1) for line in out.strip().splitlines())


def test_decompose_command(write_pair, tmp_path, capsys):
    p, q = write_pair("C")
    out_file = tmp_path / "dec.json"
    assert main(["decompose", "--p", p, "--q", q, "-o", str(out_file)]) == 0
    out = lines(capsys.readouterr().out)
    assert out["decompose.dims"] == "0 0 0 0 1 1"
    assert float(out["decompose.q0_eigenvalues"]) == pytest.approx(0.25, abs=1e-12)
    assert read_decomposition(out_file).dims == (0, 0, 0, 0, 1, 1)


def test_intertwine_existence_failure(write_pair):
    p, q = write_pair("E")
    assert main(["intertwine", "--p", p, "--q", q]) == 2
    assert main(["rotate", "--p", p, "--q", q]) == 2


def test_verify_constructed_intertwiner(write_pair, tmp_path):
    p, q = write_pair("D")
    u = full_intertwiner(decompose(FIXTURES["D"]()), seed=1)
    u_path = tmp_path / "U.json"
    write_matrix(u_path, u)
    assert main(["verify", "--p", p, "--q", q, "--u", str(u_path),
                 "--mode", "full", "--tol", "1e-8"]) == 0


def test_verify_failure_exit_code(write_pair, tmp_path, capsys):
    p, q = write_pair("C")
    u_path = tmp_path / "I.json"
    write_matrix(u_path, np.eye(2))
    assert main(["verify", "--p", p, "--q", q, "--u", str(u_path), "--mode", "outer"]) == 4
    assert lines(capsys.readouterr().out)["verify.passed"] == "false"


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_round_trip_all_fixtures(name, write_pair, tmp_path):
    p, q = write_pair(name)
    dec_path = tmp_path / f"{name}_dec.json"
    assert main(["decompose", "--p", p, "--q", q, "-o", str(dec_path)]) == 0
    assert main(["verify", "--p", p, "--q", q, "--round-trip", "--dec", str(dec_path)]) == 0


def test_intertwine_modes_and_output(write_pair, tmp_path, capsys):
    p, q = write_pair("D")
    for mode in ("outer", "inner", "full"):
        out = tmp_path / f"U_{mode}.json"
        assert main(["intertwine", "--p", p, "--q", q, "--mode", mode,
                     "--sample", "--seed", "3", "-o", str(out)]) == 0
        assert main(["verify", "--p", p, "--q", q, "--u", str(out), "--mode", mode]) == 0
    capsys.readouterr()
    assert main(["intertwine", "--p", p, "--q", q, "--selfadjoint"]) == 0
    out = lines(capsys.readouterr().out)
    assert float(out["intertwine.selfadjoint_defect"]) <= 1e-10


def test_intertwine_params_file(write_pair, tmp_path, capsys):
    p, q = write_pair("B")
    params = tmp_path / "params.json"
    write_params(params, IntertwinerParams(c2=np.eye(1), c3=np.eye(1)))
    out = tmp_path / "U.json"
    assert main(["intertwine", "--p", p, "--q", q, "--params", str(params), "-o", str(out)]) == 0
    np.testing.assert_allclose(read_matrix(out), [[0, 1], [1, 0]], atol=1e-15)
    write_params(params, IntertwinerParams(c2=2 * np.eye(1)))
    assert main(["intertwine", "--p", p, "--q", q, "--params", str(params)]) == 3


def test_rotate_command(write_pair, tmp_path, capsys):
    p, q = write_pair("B")
    c = tmp_path / "c.json"
    write_matrix(c, np.eye(1))
    s = tmp_path / "S.json"
    assert main(["rotate", "--p", p, "--q", q, "--c", str(c), "-o", str(s)]) == 0
    np.testing.assert_allclose(read_matrix(s), [[0, 1], [-1, 0]], atol=1e-15)
    assert main(["verify", "--p", p, "--q", q, "--u", str(s), "--mode", "rotation"]) == 0


def test_angles_and_extremal(write_pair, capsys):
    p, q = write_pair("C")
    assert main(["angles", "--p", p, "--q", q]) == 0
    out = lines(capsys.readouterr().out)
    assert float(out["angles.angles"]) == pytest.approx(np.pi / 3, abs=1e-12)
    assert main(["extremal", "--p", p, "--q", q, "--trials", "20"]) == 0
    out = lines(capsys.readouterr().out)
    assert float(out["extremal.extremal_norm"]) == pytest.approx(1.0, abs=1e-12)
    assert float(out["extremal.rotation_norm"]) == pytest.approx(1.0, abs=1e-10)
    assert float(out["extremal.brute_force_min"]) >= 1 - 1e-9


def test_extremal_scope(write_pair, capsys):
    p, q = write_pair("D")
    assert main(["extremal", "--p", p, "--q", q]) == 1
    assert main(["extremal", "--p", p, "--q", q, "--generic-part"]) == 0
    out = lines(capsys.readouterr().out)
    assert float(out["extremal.extremal_norm"]) == pytest.approx(1.0, abs=1e-12)


def test_gen_command_deterministic(tmp_path, capsys):
    def run(tag):
        p, q = tmp_path / f"P{tag}.json", tmp_path / f"Q{tag}.json"
        code = main(["gen", "--dims", "1", "0", "0", "1", "2", "2", "--q0", "0.3", "0.6",
                     "--seed", "5", "--p-out", str(p), "--q-out", str(q)])
        return code, p.read_text(), q.read_text()
    a, b = run("a"), run("b")
    assert a[0] == 0 and a[1:] == b[1:]
    capsys.readouterr()
    assert main(["decompose", "--p", str(tmp_path / "Pa.json"), "--q", str(tmp_path / "Qa.json")]) == 0
    assert lines(capsys.readouterr().out)["decompose.dims"] == "1 0 0 1 2 2"


def test_gen_bad_spec(tmp_path):
    assert main(["gen", "--dims", "0", "0", "0", "0", "1", "1", "--q0", "1.5",
                 "--p-out", str(tmp_path / "P.json"), "--q-out", str(tmp_path / "Q.json")]) == 3


def test_input_not_projection(tmp_path):
    p = tmp_path / "P.json"
    write_matrix(p, np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert main(["decompose", "--p", str(p), "--q", str(p)]) == 3


def test_io_and_usage_errors(tmp_path, write_pair):
    assert main(["decompose", "--p", str(tmp_path / "missing.json"), "--q", "x"]) == 1
    assert main(["decompose"]) == 1
    assert main(["frobnicate"]) == 1
    p, q = write_pair("C")
    assert main(["verify", "--p", p, "--q", q]) == 1


def test_module_entry_point(write_pair):
    p, q = write_pair("C")
    res = subprocess.run([sys.executable, "-m", "projpair", "decompose", "--p", p, "--q", q],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "decompose.dims: 0 0 0 0 1 1" in res.stdout
