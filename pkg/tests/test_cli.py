import json
import subprocess
import sys
from math import sqrt

import pytest

from clique_spectra import cli, sweeps
from clique_spectra.report import VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def roundtrips(text):
    return json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n" == text


def test_spectrum_p4(capsys):
    code, out, _ = run(capsys, "spectrum", "--sizes", "2,2,2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["spectral_radius"] == pytest.approx(2 + sqrt(10), rel=1e-9)
    assert data["energy"] == pytest.approx(4 + 2 * sqrt(10), rel=1e-9)
    assert data["inertia"] == [1, 0, 3]
    assert roundtrips(out)


def test_spectrum_k3_text(capsys):
    code, out, _ = run(capsys, "spectrum", "--sizes", "3")
    assert code == 0
    assert "eigenvalues: 2 -1 -1" in out
    assert "inertia: (1, 0, 2)" in out


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--sizes", "3,2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "index,eigenvalue"
    assert len(out.splitlines()) == 5


def test_spectrum_graph_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"blocks": [{"size": 3},
                                           {"size": 2, "attach_block": 0, "attach_vertex": 2}]}))
    code, out, _ = run(capsys, "spectrum", "--graph", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["n"] == 4


def test_spectrum_invalid_block_exit_2(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"blocks": [{"size": 3}, {"size": 1, "attach_vertex": 0}]}))
    code, _, err = run(capsys, "spectrum", "--graph", str(path))
    assert code == 2
    assert "size" in err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--sizes", "2,x"],
    ["spectrum", "--sizes", "2,1"],
    ["spectrum"],
    ["spectrum", "--sizes", "2", "--graph", "g.json"],
    ["spectrum", "--graph", "/nonexistent/g.json"],
    ["quotient", "--n1", "0", "--k", "2", "--n2", "1"],
    ["quotient", "--n1", "1", "--k", "1", "--n2", "1"],
    ["verify", "conjecture", "--n", "5", "--k", "5"],
    ["verify", "inertia", "--k", "3"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


@pytest.mark.parametrize("argv", [
    ["verify", "bogus"],
    ["spectrum", "--sizes", "2", "--bogus"],
    ["verify", "inertia", "--n-max", "0"],
    [],
])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_quotient_p32(capsys):
    code, out, _ = run(capsys, "quotient", "--n1", "2", "--k", "2", "--n2", "1",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["B"] == [[1, 1, 2], [2, 0, 1], [4, 1, 0]]
    assert data["equitable"] is True
    assert data["lambda_B"] == pytest.approx(data["lambda_D"], rel=1e-9)
    assert roundtrips(out)


def test_quotient_path(capsys):
    code, out, _ = run(capsys, "quotient", "--n1", "1", "--k", "3", "--n2", "1",
                       "--format", "json")
    assert json.loads(out)["B"] == [[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]]


def test_verify_inertia(capsys):
    code, out, _ = run(capsys, "verify", "inertia", "--n-max", "8")
    assert code == 0
    assert "checks passed" in out


def test_verify_conjecture_n10_k4(capsys, tmp_path):
    certs = tmp_path / "certs.csv"
    code, out, _ = run(capsys, "verify", "conjecture", "--n", "10", "--k", "4",
                       "--format", "json", "--certificates", str(certs))
    assert code == 0
    data = json.loads(out)
    assert data["winner_sizes"] == [4, 2, 2, 5]
    assert roundtrips(out)
    assert certs.read_text().startswith("certificate,energy\n")


def test_verify_graham_pollak(capsys):
    code, out, _ = run(capsys, "verify", "graham-pollak", "--n-max", "9", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["failed"] == 0
    assert data["formula"]["9"] == 8 * 2**7
    assert roundtrips(out)


@pytest.mark.parametrize("target", ["energy", "quotient", "lemmas"])
def test_verify_other_targets(capsys, target):
    extra = {"energy": ["--n-max", "7"], "quotient": ["--n1-max", "2", "--k-max", "4"],
             "lemmas": ["--k-max", "6"]}[target]
    code, out, _ = run(capsys, "verify", target, *extra, "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "check,params,margin,pass"


def test_verify_failure_exit_1(capsys, monkeypatch):
    bad = VerificationReport.compare("inertia", {"n": 3}, 2.0, 1.0, "eq", 0.0)
    monkeypatch.setattr(sweeps, "inertia_sweep", lambda n_max: [bad])
    code, out, _ = run(capsys, "verify", "inertia")
    assert code == 1
    assert "FAIL inertia" in out


def test_out_file(tmp_path, capsys):
    out_path = tmp_path / "spec.json"
    code, out, _ = run(capsys, "spectrum", "--sizes", "4,2", "--format", "json",
                       "--out", str(out_path))
    assert code == 0 and out == ""
    assert roundtrips(out_path.read_text())


def test_graph_command(capsys):
    code, out, _ = run(capsys, "graph", "--n", "10", "--k", "4")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 10
    assert [b["size"] for b in data["blocks"]] == [4, 2, 2, 5]


def test_floats_have_ten_significant_digits(capsys):
    _, out, _ = run(capsys, "spectrum", "--sizes", "2,2,2", "--format", "json")
    assert json.loads(out)["spectral_radius"] == 5.16227766


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clique_spectra.cli", "spectrum", "--sizes",
                           "2,2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "inertia: (1, 0, 2)" in proc.stdout
