import json
import subprocess
import sys

import pytest

from fitset.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_s4(capsys):
    code, out, _ = run(capsys, "info", "catalog:S4")
    assert code == 0
    assert "order: 24" in out and "subgroups: 30" in out
    assert "fitting_subgroup_order: 4" in out and "soluble: true" in out


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", "catalog:A5", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["n_constrained"] is False


def test_injectors_s3(capsys):
    code, out, _ = run(capsys, "injectors", "catalog:S3", "--fitset", "trace(nil)", "--json")
    data = json.loads(out)
    rep = data["brute_force"]
    assert code == 0 and rep["count"] == 1 and rep["single_conjugacy_class"]
    assert rep["injectors"][0]["order"] == 3


def test_theorem_refusal_exit_code(capsys):
    code, out, err = run(capsys, "injectors", "catalog:A5", "--h", "2:=trivial", "--method", "theorem")
    assert code == 3 and "refused" in out


def test_brute_force_still_returns_data(capsys):
    code, out, _ = run(capsys, "injectors", "catalog:A5", "--h", "2:=trivial", "--method", "brute", "--json")
    assert code == 0 and json.loads(out)["brute_force"]["count"] > 0


def test_both_methods_agree(capsys):
    code, out, _ = run(capsys, "injectors", "catalog:S4", "--h", "2:=trace(nil);3:=trace(nil)", "--json")
    data = json.loads(out)
    assert code == 0 and data["agree"] and data["theorem"]["injectors"][0]["order"] == 12


def test_hfunc_file(capsys, tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("p 2 := trace(nil)\np 3 := trace(nil)\n", encoding="utf-8")
    code, out, _ = run(capsys, "hartley", "catalog:S4", "--hfunc", str(path), "--show-conversions", "--json")
    data = json.loads(out)
    assert code == 0 and data["h_radical"]["order"] == 4 and data["hartley_radical"]["order"] == 12
    assert data["conversions"]["full_E_preserves"] and data["conversions"]["full_S_flags"]


def test_radical_and_subgroups(capsys):
    code, out, _ = run(capsys, "radical", "catalog:S4", "--fitset", "trace(nil)", "--json")
    assert code == 0 and json.loads(out)["radical"]["order"] == 4
    code, out, _ = run(capsys, "subgroups", "catalog:S3", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["subgroups"]) == 6


def test_group_file(capsys, tmp_path):
    path = tmp_path / "s3.grp"
    path.write_text("degree 3\ngen (1 2)\ngen (1 2 3)\n", encoding="utf-8")
    code, out, _ = run(capsys, "info", f"file:{path}")
    assert code == 0 and "order: 6" in out


@pytest.mark.parametrize("argv", [
    ["info", "catalog:Nope"],
    ["info", "S4"],
    ["injectors", "catalog:S4", "--fitset", "trace(nul)"],
    ["injectors", "catalog:S4", "--fitset", "trace(nil)", "--method", "theorem"],
    ["injectors", "catalog:S4"],
    ["verify", "--suite", "bogus"],
    ["info", "file:/nonexistent/path.grp"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_exit_code_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "injectors", "--max-order", "24", "--json", str(a))[0] == 0
    assert run(capsys, "verify", "--suite", "injectors", "--max-order", "24", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["schema"] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fitset", "info", "catalog:S3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "order: 6" in proc.stdout
