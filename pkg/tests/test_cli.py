import json
import subprocess
import sys

import pytest

from skewprod.cli import RunConfig, main, parse_config
from skewprod.skew import load


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_case1_json(capsys):
    code, out, _ = run(["case", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["passed"]
    rep = doc["reports"][0]
    assert rep["case"] == "1" and rep["total"] == 240


def test_text_and_json_cover_same_claims(capsys):
    _, js, _ = run(["case", "1"], capsys)
    _, txt, _ = run(["case", "1", "--format", "text"], capsys)
    ids = {c["id"] for c in json.loads(js)["reports"][0]["claims"]}
    lines = [ln.split()[1] for ln in txt.splitlines() if ln.strip().startswith(("PASS", "FAIL"))]
    assert set(lines) == ids and len(lines) == len(ids)
    assert txt.rstrip().endswith("ALL CLAIMS PASS")


def test_determinism(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["case", "1", "7", "--out", str(a)]) == 0
    monkeypatch.setenv("SKEWPROD_THREADS", "2")
    assert main(["case", "1", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_oracle_c5(capsys):
    code, out, _ = run(["oracle", "--group", "c5"], capsys)
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["total"] == 4 and rep["extra"]["proper"] == 0


def test_verify_theorem_single_n(capsys):
    code, out, _ = run(["verify-theorem", "--n", "6"], capsys)
    assert code == 0
    labels = [f["label"] for f in json.loads(out)["reports"][0]["extra"]["factorisations"]]
    assert "Sym(6) = Sym(5) C6" in labels and "Sym(7) = Sym(6) C7" not in labels
    assert "M11 = M10 C11" in labels


@pytest.mark.parametrize("argv", [
    ["case", "9"],
    ["case", "6", "--n", "9"],
    ["case", "7", "--n", "6"],
    ["oracle", "--group", "foo(3)"],
    ["oracle", "--group", "sym(4)"],
    ["induce", "--group", "sym(5)", "--sub", "stab(5)", "--elem", "(1,2"],
    ["case", "1", "--sample-size", "0"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_failed_claim_exits_1(capsys):
    code, out, err = run(["induce", "--group", "sym(5)", "--sub", "stab(5)", "--elem", "(1,2,3)"], capsys)
    assert code == 1
    assert "valid_pair" in err
    assert not json.loads(out)["passed"]


def test_bad_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("SKEWPROD_THREADS", "many")
    code, _, _ = run(["oracle", "--group", "c3"], capsys)
    assert code == 2


def test_induce_export(tmp_path, capsys):
    path = tmp_path / "s6.skw"
    code, out, _ = run(["induce", "--group", "sym(7)", "--sub", "stab(7)",
                        "--elem", "(1,2,3,4,5,6,7)", "--export", str(path)], capsys)
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["classes"][0]["order"] == 7
    phi = load(path)
    assert phi.order == 7 and phi.size == 720


def test_run_config_round_trip():
    cfg = parse_config(["case", "6", "--n", "10", "--seed", "3", "--out", "x.json"])
    assert cfg.case_ids == [6] and cfg.n == 10 and cfg.seed == 3
    d = cfg.as_dict()
    assert "out" not in d and d["seed"] == 3
    assert cfg.settings().seed == 3
    assert RunConfig("examples").as_dict()["case_ids"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewprod.cli", "oracle", "--group", "c3", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "ALL CLAIMS PASS" in proc.stdout
