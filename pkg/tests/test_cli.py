import json
import subprocess
import sys

import pytest

from hyperspec.cli import main
from hyperspec.families import build
from hyperspec.spectral import spectral_radius


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_family_then_rho_round_trip(tmp_path, capsys):
    path = tmp_path / "c2.json"
    code, _, _ = run(capsys, "family", "C2", "3", "-o", str(path))
    assert code == 0
    code, res, _ = run(capsys, "rho", str(path))
    lib = spectral_radius(build("C2", 3), tol=1e-10).to_json()
    assert code == 0 and json.dumps(res, sort_keys=True) == json.dumps(lib, sort_keys=True)
    assert res["method"] == "power-iteration" and res["rho"] == pytest.approx(3.1748021, abs=1e-7)


def test_rho_tree_method(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(build("F3", 2, 3, 4).dumps())
    code, res, _ = run(capsys, "rho", str(path), "--method", "tree")
    assert code == 0 and res["method"] == "hypertree-bisection"


def test_non_convergence_exit_code(tmp_path, capsys, monkeypatch):
    path = tmp_path / "p.json"
    path.write_text(build("Path", 3, 40).dumps())
    monkeypatch.setenv("HYPERSPEC_TOL", "1e-30")
    import hyperspec.spectral as sp
    monkeypatch.setattr(sp, "rho_power", lambda h, tol: sp.SpectralResult(1.0, 0.9, 1.1, 3, sp.POWER, False))
    code, res, err = run(capsys, "rho", str(path), "--method", "power")
    assert code == 1 and "no convergence" in err and res["converged"] is False


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"r": 3, "edges": [[0, 1]')
    assert run(capsys, "rho", str(bad))[0] == 2
    bad.write_text('{"r": 3, "edges": [[0, 1]]}')
    assert run(capsys, "classify", str(bad))[0] == 2
    assert run(capsys, "rho", str(tmp_path / "missing.json"))[0] == 2


def test_usage_errors(capsys):
    assert main(["nonsense"]) == 2
    assert main([]) == 2
    assert main(["family", "NoSuchFamily"]) == 2
    assert main(["beta", "dagger-g", "1", "2"]) == 2
    capsys.readouterr()


def test_bad_tolerance_env(tmp_path, capsys, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(build("C2", 3).dumps())
    monkeypatch.setenv("HYPERSPEC_TOL", "tight")
    assert run(capsys, "rho", str(path))[0] == 2


def test_certify_check(capsys):
    code, out, _ = run(capsys, "certify", "S5_3", "--check")
    assert code == 0 and out["verified"]
    assert out["verdict"]["kind"] == "supernormal" and out["verdict"]["strict"]
    assert out["certificate"]["extras"]["center_sum"] == pytest.approx(1.1803, abs=1e-4)


def test_certify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "certify", "G3_4", "3", "1", "--check")
    assert code == 1 and out["verified"] is False


def test_family_with_certificate_and_string_params(capsys):
    code, out, _ = run(capsys, "family", "Spine4_offpath", "0", "2", "H2:1:3", "--certificate")
    assert code == 0 and out["certificate"]["kind"] == "supernormal"
    code, out, _ = run(capsys, "family", "Smith", "E8")
    assert code == 0 and out["r"] == 2 and len(out["edges"]) == 7


def test_beta_subcommands(capsys):
    code, out, _ = run(capsys, "beta", "dagger-g", "1", "1", "4", "5")
    assert code == 0 and out["value"] == pytest.approx(0.236566, abs=1e-6) and out["verdict"] == "admissible"
    code, out, _ = run(capsys, "beta", "dagger-g", "1", "1", "3", "inf")
    assert out["listed"] and out["args"][-1] == "inf"
    code, out, _ = run(capsys, "beta", "symmetric", "1")
    assert out["value"] == pytest.approx(0.5141317, abs=1e-7)
    code, out, _ = run(capsys, "beta", "f3", "2", "3", "4")
    assert out["beta"] == pytest.approx(0.25)
    code, out, _ = run(capsys, "beta", "iter", "0.1", "inf")
    assert out["value"] == pytest.approx(0.381966, abs=1e-6)
    assert run(capsys, "beta", "iter", "0.9", "3")[0] == 2


def test_classify(tmp_path, capsys):
    path = tmp_path / "d.json"
    path.write_text(build("Dagger4", 1, 2, 2, 3).dumps())
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0 and out["category"] == "dagger"
    code, out, _ = run(capsys, "classify", str(path), "--spectral")
    assert out["verdict"] == "admissible" and out["theorem_violation"] is False


def test_enumerate_with_census(tmp_path, capsys):
    path = tmp_path / "census.csv"
    code, out, _ = run(capsys, "enumerate", "-r", "3", "-m", "3", "--census", str(path))
    assert code == 0 and out["total"] == 12 and out["by_edges"] == {"1": 1, "2": 2, "3": 9}
    assert path.read_text().startswith("canonical_form,n,edges,rho,verdict,category")
    assert run(capsys, "enumerate", "-r", "3", "-m", "9")[0] == 2


def test_enumerate_reports_violations(capsys):
    code, out, _ = run(capsys, "enumerate", "-r", "3", "-m", "5", "--simple")
    assert code == 1 and len(out["violations"]) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hyperspec", "beta", "symmetric", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "value" in json.loads(res.stdout)
