import json
import subprocess
import sys

import pytest

from rbforge.cli import REPRODUCE_IDS, main
from rbforge.groups import CarrierMap, build_group
from rbforge.operators import check_rb


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_rb_s3_operator(data_dir, capsys):
    code, out, _ = run(["verify-rb", "--group", "S3", "--op", str(data_dir / "s3_operator.json")], capsys)
    assert code == 0
    assert json.loads(out) == {"check": "rb", "ok": True, "pairs_checked": 36, "weight": 1}


def test_verify_rb_failure_emits_certificate(data_dir, capsys):
    code, out, _ = run(["verify-rb", "--op", str(data_dir / "failing_rb.json")], capsys)
    assert code == 1
    cert = json.loads(out)["violation"]
    G = build_group("S3")
    v = check_rb(CarrierMap.identity(G))
    assert cert["pair"] == list(v.witness) and cert["lhs"] == v.lhs != cert["rhs"]
    assert cert["pair_labels"] == [G.labels[g] for g in v.witness]


def test_verify_rrb(data_dir, capsys):
    assert run(["verify-rrb", "--op", str(data_dir / "z4_rrb.json")], capsys)[0] == 0
    code, out, _ = run(["verify-rrb", "--op", str(data_dir / "failing_rrb.json")], capsys)
    assert code == 1 and "violation" in json.loads(out)
    # on an abelian space both weights impose the same identity
    assert run(["verify-rrb", "--op", str(data_dir / "z4_rrb.json"), "--weight", "-1"], capsys)[0] == 0


@pytest.mark.parametrize("name", ["bad_syntax", "bad_length", "bad_label", "bad_group", "bad_weight",
                                  "bad_index", "missing_image", "does_not_exist"])
def test_corrupted_operator_files_exit_2(name, data_dir, capsys):
    code, out, err = run(["verify-rb", "--op", str(data_dir / f"{name}.json")], capsys)
    assert code == 2
    assert out == ""
    assert err.startswith("rbforge: error:")


def test_corrupted_action_exits_2(data_dir, capsys):
    assert run(["verify-rrb", "--op", str(data_dir / "bad_action.json")], capsys)[0] == 2


@pytest.mark.parametrize("argv", [[], ["no-such-command"], ["enumerate-rb"], ["enumerate-rb", "--group", "S3",
                                  "--weight", "2"], ["verbal-classify", "--format", "xml"],
                                  ["matrix-ybe", "--q", "5", "--box", "2"], ["zp2-classify", "--p", "7"],
                                  ["enumerate-rb", "--group", "Z3xY2"], ["reproduce", "unknown"]])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_help_exits_0(capsys):
    assert run(["--help"], capsys)[0] == 0
    assert run(["enumerate-rb", "--help"], capsys)[0] == 0


def test_enumerate_rb_z4(capsys):
    code, out, _ = run(["enumerate-rb", "--group", "Z4"], capsys)
    data = json.loads(out)
    assert code == 0 and data["count"] == 4
    assert "identity" in data["notes"][0]


def test_enumerate_csv_and_text(capsys):
    code, out, _ = run(["enumerate-rb", "--group", "Z2", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["index,image", "0,0 0", "1,0 1"]
    code, out, _ = run(["enumerate-rb", "--group", "S3", "--format", "text"], capsys)
    assert out.strip() == "8 RB operators of weight 1 on S3"


def test_csv_refused_for_nested_reports(capsys):
    assert run(["zp2-classify", "--p", "2", "--format", "csv"], capsys)[0] == 2


def test_output_is_independent_of_workers(capsys, monkeypatch):
    one = run(["enumerate-rb", "--group", "D4", "--workers", "1"], capsys)[1]
    two = run(["enumerate-rb", "--group", "D4", "--workers", "2"], capsys)[1]
    assert one == two
    monkeypatch.setenv("RBFORGE_WORKERS", "3")
    assert run(["enumerate-rb", "--group", "D4"], capsys)[1] == one
    a = run(["verbal-classify", "--K", "1", "--U", "1", "--workers", "1"], capsys)[1]
    b = run(["verbal-classify", "--K", "1", "--U", "1", "--workers", "3"], capsys)[1]
    assert a == b


def test_enumerate_rrb(data_dir, capsys):
    code, out, _ = run(["enumerate-rrb", "--space", "Z4", "--actor", "Z2xZ2"], capsys)
    assert code == 0 and json.loads(out)["count"] == 4  # trivial action: Hom(Z4, Z2xZ2)


def test_lift_and_project(data_dir, tmp_path, capsys):
    code, out, _ = run(["lift", "--op", str(data_dir / "z4_rrb.json")], capsys)
    lifted = json.loads(out)
    assert code == 0 and lifted["round_trip"] and lifted["product"]["order"] == 16
    rrb = json.loads((data_dir / "z4_rrb.json").read_text())
    op = tmp_path / "lifted.json"
    op.write_text(json.dumps({"action": rrb["action"], "image": lifted["image"]}))
    code, out, _ = run(["project", "--op", str(op)], capsys)
    assert code == 0 and json.loads(out)["image"] == rrb["image"]


def test_project_centre_violation(tmp_path, capsys):
    op = tmp_path / "inv.json"
    action = {"actor": "Z1", "space": "S3", "auts": [[0, 1, 2, 3, 4, 5]]}
    op.write_text(json.dumps({"action": action, "image": [0, 1, 2, 4, 3, 5]}))
    code, out, _ = run(["project", "--op", str(op)], capsys)
    assert code == 1 and json.loads(out)["witness"] == 1


def test_braces_and_postgroups(data_dir, capsys):
    code, out, _ = run(["brace-from-rrb", "--op", str(data_dir / "z4_rrb.json")], capsys)
    assert code == 0 and json.loads(out)["circ_type"] == "Z2xZ2"
    code, out, _ = run(["brace-from-rb", "--op", str(data_dir / "s3_operator.json")], capsys)
    assert code == 0 and json.loads(out)["circ_type"] == "Z6"
    code, out, _ = run(["brace-from-rb", "--op", str(data_dir / "failing_rb.json")], capsys)
    assert code == 1
    code, out, _ = run(["postgroup", "--group", "Heis3", "--nilpotent", "2"], capsys)
    data = json.loads(out)
    assert code == 0 and data["circ_type"] == "Z3xZ3xZ3" and data["lambda_homomorphic"]
    assert run(["postgroup", "--group", "S3", "--nilpotent", "1"], capsys)[0] == 2
    assert run(["lambda-check", "--brace", str(data_dir / "z4_brace.json")], capsys)[0] == 0
    assert run(["lambda-check", "--brace", str(data_dir / "bad_brace.json")], capsys)[0] == 1


def test_lambda_check_negative(tmp_path, capsys):
    # the conjugation post-group brace on S3 is not lambda-homomorphic
    code, out, _ = run(["postgroup", "--group", "S3", "--conjugation"], capsys)
    data = json.loads(out)
    assert code == 0 and not data["lambda_homomorphic"]


def test_ybe_commands(data_dir, capsys):
    assert run(["ybe-check", "--solution", str(data_dir / "swap_solution.json")], capsys)[0] == 0
    code, out, _ = run(["ybe-check", "--solution", str(data_dir / "failing_solution.json")], capsys)
    assert code == 1 and len(json.loads(out)["violation"]["triple"]) == 3
    assert run(["ybe-check", "--solution", str(data_dir / "bad_length.json")], capsys)[0] == 2
    assert run(["ybe-from-brace", "--op", str(data_dir / "z4_rrb.json")], capsys)[0] == 0


def test_matrix_and_verbal_commands(capsys):
    assert run(["matrix-ybe", "--matrix", "0,1,1,0"], capsys)[0] == 0
    assert run(["matrix-ybe", "--matrix", "1,1,1,1", "--q", "5"], capsys)[0] == 1
    code, out, _ = run(["matrix-ybe", "--q", "5"], capsys)
    assert code == 0 and json.loads(out)["passing"] == 68
    assert run(["verbal-check", "--tuple", "0,1,2,1,0,-1", "--group", "Heis3", "--group", "Q8"], capsys)[0] == 0
    assert run(["verbal-check", "--tuple", "1,0,1,0,1,0"], capsys)[0] == 1
    assert run(["verbal-check", "--tuple", "1,0,1"], capsys)[0] == 2


def test_zp2_command(capsys):
    code, out, _ = run(["zp2-classify", "--p", "3"], capsys)
    assert code == 0 and json.loads(out)["non_homomorphic_count"] == 0
    code, out, _ = run(["zp2-classify", "--p", "2"], capsys)
    assert code == 0 and json.loads(out)["non_homomorphic_count"] == 6


@pytest.mark.parametrize("example", [e for e in REPRODUCE_IDS if e != "verbal-box2"])
def test_reproduce_matches_golden(example, capsys):
    code, out, _ = run(["reproduce", example], capsys)
    data = json.loads(out)
    assert data["golden_match"] and data["assertions_hold"]
    assert code == 0


def test_reproduce_verbal_box2_reports_the_gap(capsys):
    code, out, _ = run(["reproduce", "verbal-box2"], capsys)
    data = json.loads(out)
    assert data["golden_match"]
    assert not data["assertions_hold"] and code == 1
    assert len(data["report"]["unmatched_passing"]) == 18
    assert data["report"]["with_supplementary_families"]["unmatched_passing"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rbforge", "matrix-ybe", "--matrix", "1,0,0,1", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "solution" in proc.stdout
