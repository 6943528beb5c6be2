import json

import numpy as np
import pytest

from symmpovm.cli import main
from symmpovm.jsonio import save_state


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


def test_povm_coalesced(capsys):
    code, rep, _ = run_json(capsys, "povm", "--j", "1", "--coalesce")
    assert code == 0
    assert set(rep) == {"command", "inputs", "outputs", "tool_version", "seed"}
    out = rep["outputs"]
    assert out["count"] == 7
    el = next(e for e in out["elements"] if e["label"] == "k∈{1,2},q=+1")
    assert el["multiplicity"] == 2
    assert np.allclose(el["matrix"]["re"], np.diag([1 / 3, 1 / 3, 0]).ravel())
    assert out["completeness_defect"] < 1e-12


def test_povm_half(capsys):
    code, rep, _ = run_json(capsys, "povm", "--j", "1/2")
    assert code == 0 and rep["outputs"]["count"] == 4


@pytest.mark.parametrize("j", ["0", "abc", "1/3", "-1"])
def test_povm_bad_spin(capsys, j):
    with pytest.raises(SystemExit) as exc:
        main(["povm", "--j", j])
    assert exc.value.code == 2


def test_povm_pretty(capsys):
    code, out, _ = run(capsys, "povm", "--j", "1", "--format", "pretty")
    assert code == 0 and "1/18" in out and "k=2,q=+2" in out


def test_dilate_e11(capsys):
    code, rep, _ = run_json(capsys, "dilate", "--j", "1", "--element", "k=1,q=+1", "--coalesce")
    assert code == 0
    d = rep["outputs"]["dilated"]
    m = np.array(d["re"]).reshape(4, 4)
    assert m[0, 0] == pytest.approx(1 / 3)
    assert rep["outputs"]["pauli"] == pytest.approx({"II": 1 / 6, "ZI": 1 / 12, "IZ": 1 / 12, "XX": 1 / 12, "YY": 1 / 12})


def test_dilate_spin_half(capsys):
    code, rep, _ = run_json(capsys, "dilate", "--j", "1/2", "--element", "k=0,q=0")
    m = np.array(rep["outputs"]["dilated"]["re"]).reshape(2, 2)
    assert code == 0 and np.allclose(m, np.eye(2) / 4)


def test_dilate_unknown_label(capsys):
    code, _, err = run(capsys, "dilate", "--j", "1", "--element", "k=7,q=0")
    assert code == 2
    assert "valid labels" in err and "k=2,q=-2" in err


def test_dilate_qubit_mismatch(capsys):
    code, _, err = run(capsys, "dilate", "--j", "1", "--n-qubits", "3", "--element", "k=0,q=0")
    assert code == 2 and "2j" in err


def test_measure_pure_pipeline(capsys, tmp_path):
    path = tmp_path / "psi.json"
    save_state(path, np.ones(4) / 2, "pure")
    code, rep, _ = run_json(
        capsys, "measure", "--state", str(path), "--j", "1", "--element", "k=1,q=+1", "--coalesce"
    )
    assert code == 0
    out = rep["outputs"]
    assert np.allclose(out["post_state"]["re"], np.array([1, 1, 1, 0]) / np.sqrt(3), atol=1e-12)
    assert out["ppt"]["entangled"] is True
    assert out["ppt"]["min_eigenvalue"] == pytest.approx(-0.333333, abs=1e-6)


def test_measure_density_symmetric_space(capsys, tmp_path):
    path = tmp_path / "rho.json"
    save_state(path, np.diag([0.5, 0.25, 0.25]), "density")
    code, rep, _ = run_json(capsys, "measure", "--state", str(path), "--j", "1", "--element", "k=2,q=+2")
    assert code == 0
    assert rep["inputs"]["dilated"] is False
    assert np.allclose(np.array(rep["outputs"]["post_state"]["re"]).reshape(3, 3), np.diag([1, 0, 0]))


def test_measure_sampling_deterministic(capsys, tmp_path):
    path = tmp_path / "mixed.json"
    save_state(path, np.eye(3) / 3, "density")
    args = ("measure", "--state", str(path), "--j", "1", "--sample", "1000", "--seed", "7")
    code, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert code == 0 and first == second
    table = json.loads(first)["outputs"]["table"]
    assert sum(row["count"] for row in table) == 1000
    assert json.loads(first)["seed"] == 7


def test_measure_sampling_dilated_includes_complement(capsys, tmp_path):
    path = tmp_path / "singlet.json"
    save_state(path, np.array([0, 1, -1, 0]) / np.sqrt(2), "pure")
    code, rep, _ = run_json(capsys, "measure", "--state", str(path), "--n-qubits", "2", "--sample", "50")
    rows = {r["label"]: r for r in rep["outputs"]["table"]}
    assert code == 0 and rows["outside-symmetric"]["count"] == 50


def test_measure_rejects_bad_trace(capsys, tmp_path):
    path = tmp_path / "bad.json"
    save_state(path, np.eye(3) * 0.3, "density")
    code, _, err = run(capsys, "measure", "--state", str(path), "--j", "1", "--element", "k=0,q=0")
    assert code == 2 and "trace" in err


def test_measure_zero_probability(capsys, tmp_path):
    path = tmp_path / "singlet.json"
    save_state(path, np.array([0, 1, -1, 0]) / np.sqrt(2), "pure")
    code, _, err = run(capsys, "measure", "--state", str(path), "--j", "1", "--element", "k=1,q=+1")
    assert code == 2 and "no support" in err


def test_verify_example_suite(capsys):
    code, rep, _ = run_json(capsys, "verify", "--suite", "paper")
    assert code == 0 and rep["outputs"]["passed"]
    assert rep["outputs"]["known_discrepancies"]


def test_verify_random(capsys):
    code, rep, _ = run_json(capsys, "verify", "--suite", "random", "--dims", "4", "--trials", "50")
    assert code == 0
    names = [c["name"] for c in rep["outputs"]["checks"]]
    assert any("N=4, 50 random" in n for n in names)


def test_verify_bad_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_eps_env_override(monkeypatch):
    import importlib

    from symmpovm import config

    monkeypatch.setenv("POVM_EPS", "1e-6")
    importlib.reload(config)
    try:
        assert config.EPS == 1e-6 and config.resolve_eps(None) == 1e-6
    finally:
        monkeypatch.delenv("POVM_EPS")
        importlib.reload(config)
    assert config.EPS == config.DEFAULT_EPS
