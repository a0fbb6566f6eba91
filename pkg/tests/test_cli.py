import json
import subprocess
import sys

import pytest

from evencycle.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_and_solve_ex1(tmp_path, capsys):
    prefix = tmp_path / "ex1"
    code, out, _ = run(["gen", "ex1", "--l", "3", "--q", "4", "--k", "0", "--output", str(prefix)], capsys)
    assert code == 0
    info = json.loads(out)
    assert info["n"] == 9
    cert = json.loads((tmp_path / "ex1.cert.json").read_text())
    assert cert["min_degree"] == 4 and cert["connectivity"] == 3
    code, out, _ = run(["solve", info["graph"], "2,2"], capsys)
    rep = json.loads(out)
    assert code == 2 and rep["verdict"] == "obstruction"
    assert rep["certificate"]["report"]["matches"][0]["family"] == "Ex1"


def test_gen_ex2_files(tmp_path, capsys):
    code, out, _ = run(["gen", "ex2", "--q", "4", "--n", "9", "-o", str(tmp_path / "g")], capsys)
    assert code == 0 and (tmp_path / "g.edges").exists() and (tmp_path / "g.cert.json").exists()


def test_gen_usage_errors(capsys):
    assert run(["gen", "ex1", "--l", "3", "--q", "5", "--k", "0"], capsys)[0] == 64
    assert run(["gen", "ex1", "--q", "4"], capsys)[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["gen", "nope"])
    assert exc.value.code == 64


def test_solve_complete_graph(tmp_path, capsys):
    f = tmp_path / "k8.edges"
    f.write_text("".join(f"{u} {v}\n" for u in range(8) for v in range(u + 1, 8)))
    code, out, _ = run(["solve", str(f), "2,2", "--allow-any-sum"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "packing" and len(rep["packing"]["cycles"]) == 2
    assert run(["solve", str(f), "2,2"], capsys)[0] == 64  # 2+2 != 7


def test_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.edges"
    f.write_text("0 1\n1 2 3\n")
    code, _, err = run(["solve", str(f), "2"], capsys)
    assert code == 64 and "line 2" in err
    assert run(["solve", str(tmp_path / "missing"), "2"], capsys)[0] == 64


def test_oracle_spectrum_detect(tmp_path, capsys):
    run(["gen", "ex2", "--q", "4", "--n", "9", "-o", str(tmp_path / "g")], capsys)
    g = str(tmp_path / "g.edges")
    code, out, _ = run(["oracle", g, "2,2"], capsys)
    assert code == 2 and json.loads(out)["verdict"] == "infeasible"
    code, out, _ = run(["spectrum", g], capsys)
    assert json.loads(out)["even"] == [4, 6, 8]
    code, out, _ = run(["detect", g, "--beta", "0.12", "--targets", "2,2"], capsys)
    rep = json.loads(out)
    assert rep["beta_extremal"]["b_set"] == [0, 1, 2, 3, 4, 5]
    assert {m["family"] for m in rep["blocks_targets"]} >= {"Ex2"}


def test_labels_reported(tmp_path, capsys):
    f = tmp_path / "named.edges"
    f.write_text("a b\nb c\nc d\nd a\n")
    code, out, _ = run(["solve", str(f), "2"], capsys)
    rep = json.loads(out)
    assert rep["verdict"] == "packing" and rep["labels"]["0"] == "a"


def test_verify_exit_codes(capsys):
    code, out, _ = run(["verify", "conjecture", "--n-max", "7"], capsys)
    assert code == 0 and json.loads(out)["violations"] == []
    code, out, _ = run(["verify", "lemmas", "--seed", "7", "--iters", "50"], capsys)
    assert code == 0 and json.loads(out)["defects"] == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "evencycle", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "0.1.0"
