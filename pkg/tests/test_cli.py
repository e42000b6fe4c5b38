import json
from pathlib import Path
import subprocess
import sys


from lieyamaguti.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_verify_exit_codes(capsys, fixture_path):
    code, doc, _ = run_json(capsys, "verify", fixture_path("two_dim.lya"))
    assert code == 0 and doc["passed"] and doc["command"] == "verify"
    code, doc, _ = run_json(capsys, "verify", fixture_path("two_dim_corrupted.lya"))
    assert code == 1 and not doc["passed"]
    failed = {c["name"] for c in doc["reports"][0]["checks"] if not c["passed"]}
    assert failed and all("counterexample" in c for c in doc["reports"][0]["checks"] if not c["passed"])
    assert run(capsys, "verify", fixture_path("empty.lya"))[0] == 0
    assert run(capsys, "verify", "--adjoint", fixture_path("four_dim.lya"))[0] == 0


def test_rb_check(capsys, fixture_path):
    code, doc, _ = run_json(capsys, "rb-check", "--adjoint", fixture_path("two_dim.lya"))
    assert code == 0 and len(doc["reports"]) == 2
    assert doc["reports"][1]["data"]["closed_forms_agree"]
    code, doc, _ = run_json(capsys, "rb-check", "--adjoint", fixture_path("infeasible_obstruction.lya"))
    assert code == 0
    # a file without representation section needs --adjoint
    code, doc, err = run_json(capsys, "rb-check", fixture_path("two_dim.lya"))
    assert code == 2 and "--adjoint" in err and doc["error"]["type"] == "InputError"


def test_rb_check_failure(capsys, tmp_path, fixture_path):
    text = Path(fixture_path("two_dim.lya")).read_text().replace('[0, "1/2"]', '[1, "1/2"]')
    f = tmp_path / "bad.lya"
    f.write_text(text)
    code, doc, _ = run_json(capsys, "rb-check", "--adjoint", f)
    assert code == 1 and not doc["reports"][0]["passed"] and not doc["reports"][1]["passed"]


def test_cohomology_table(capsys, fixture_path):
    code, doc, _ = run_json(capsys, "cohomology", "--adjoint", fixture_path("two_dim.lya"))
    assert code == 0
    table = doc["reports"][0]["data"]["table"]
    assert [(r["level"], r["H"]) for r in table][:2] == [(1, 2), (2, 3)]
    code, out, _ = run(capsys, "cohomology", "--adjoint", "--format", "text", fixture_path("two_dim.lya"))
    assert code == 0 and "level  cochains" in out


def test_cohomology_yamaguti(capsys, fixture_path):
    code, doc, _ = run_json(capsys, "cohomology", "--adjoint", "--complex", "yamaguti", "--level", "2",
                            fixture_path("two_dim.lya"))
    assert code == 0 and doc["reports"][0]["data"]["table"][0]["level"] == 2


def test_cohomology_caps(capsys, fixture_path):
    code, doc, err = run_json(capsys, "cohomology", "--adjoint", "--level", "4", fixture_path("two_dim.lya"))
    assert code == 3 and "--max-level" in err and doc["error"]["type"] == "ResourceCapExceeded"
    code, _, err = run_json(capsys, "cohomology", "--adjoint", "--max-tensor-entries", "10",
                            fixture_path("four_dim.lya"))
    assert code == 3 and "--max-tensor-entries" in err


def test_cohomology_requires_rb(capsys, fixture_path, tmp_path):
    text = Path(fixture_path("two_dim.lya")).read_text().replace('[0, "1/2"]', '[1, "1/2"]')
    f = tmp_path / "bad.lya"
    f.write_text(text)
    code, doc, _ = run_json(capsys, "cohomology", "--adjoint", f)
    assert code == 1 and doc["error"]["type"] == "NotRotaBaxter"
    assert doc["reports"][0]["title"] == "relative rota-baxter"


def test_deform_subcommands(capsys, fixture_path):
    code, doc, _ = run_json(capsys, "deform", "check-linear", "--adjoint", fixture_path("two_dim.lya"))
    assert code == 0 and all(r["passed"] for r in doc["reports"])
    code, doc, _ = run_json(capsys, "deform", "nijenhuis", "--adjoint", fixture_path("four_dim.lya"))
    assert code == 0 and len(doc["reports"]) == 1
    assert "trivial_deformation" in doc["reports"][0]["data"]
    code, doc, _ = run_json(capsys, "deform", "order-n", "--adjoint", fixture_path("two_dim.lya"))
    assert code == 0 and doc["reports"][0]["data"]["extension"] is not None
    code, doc, _ = run_json(capsys, "deform", "obstruction", "--adjoint", fixture_path("two_dim.lya"))
    assert code == 0 and doc["reports"][0]["data"]["obstruction"]


def test_nijenhuis_iterates_all_wedges(capsys, fixture_path, tmp_path):
    text = Path(fixture_path("four_dim.lya")).read_text().split("wedge_element:")[0]
    f = tmp_path / "no_wedge.lya"
    f.write_text(text)
    code, doc, _ = run_json(capsys, "deform", "nijenhuis", "--adjoint", f)
    assert code == 0 and len(doc["reports"]) == 6


def test_infeasible_obstruction(capsys, fixture_path):
    code, doc, _ = run_json(capsys, "deform", "obstruction", "--adjoint", fixture_path("infeasible_obstruction.lya"))
    assert code == 1
    rep = doc["reports"][0]
    assert rep["data"]["extension"] is None
    assert [c["passed"] for c in rep["checks"] if c["name"] == "class_is_trivial"] == [False]


def test_selftest(capsys):
    code, doc, _ = run_json(capsys, "selftest", "--dims", "1,1", "--samples", "4")
    assert code == 0 and doc["reports"][0]["passed"]
    code, _, err = run_json(capsys, "selftest", "--dims", "3")
    assert code == 2 and "--dims" in err


def test_selftest_default_dims(capsys):
    code, doc, _ = run_json(capsys, "selftest", "--dims", "3,2", "--degree", "2")
    assert code == 0
    assert {c["name"] for c in doc["reports"][0]["checks"]} >= {"graded_jacobi", "strict_mc_iff_rota_baxter"}


def test_input_errors(capsys, tmp_path):
    f = tmp_path / "broken.lya"
    f.write_text("algebra:\n  dimension: 2\n  binary:\n    - {i: 1, j: 2, value: [1.5, 0]}\n")
    code, doc, err = run_json(capsys, "verify", f)
    assert code == 2 and doc["error"]["line"] == 4 and "line 4" in err
    code, doc, _ = run_json(capsys, "verify", tmp_path / "missing.lya")
    assert code == 2 and not doc["passed"]


def test_json_output_is_deterministic(capsys, fixture_path):
    outs = [run(capsys, "cohomology", "--adjoint", "--max-level", "2", fixture_path("four_dim.lya")) for _ in range(2)]
    assert outs[0][0] == 0
    assert outs[0] == outs[1]


def test_console_script_entry_point(fixture_path):
    proc = subprocess.run([sys.executable, "-m", "lieyamaguti", "verify", str(fixture_path("two_dim.lya"))],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
