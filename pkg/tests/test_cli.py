"""Console entry point: dispatch, formats and the exit-status contract."""

import json

import pytest

from statman.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_structure_kenmotsu(capsys):
    code, out, _ = run(capsys, "check", "kenmotsu5d", "--structure", "kenmotsu")
    assert code == 0
    assert "[FAIL" not in out and "[PASS    ] K_phi" in out


def test_soliton_with_comparison_lines(capsys):
    code, out, _ = run(capsys, "soliton", "kenmotsu5d", "--kind", "eta-ricci", "--potential", "xi",
                       "--ricci-source", "statistical")
    assert code == 0
    assert "lambda   : 3" in out and "omega    : 1" in out
    assert "[MISMATCH] eta_ricci[omega]" in out


def test_audit_section_three_names_convention(capsys):
    code, out, _ = run(capsys, "audit", "kenmotsu5d", "--section", "3")
    assert code == 0
    assert "item_i[standard]" in out and "item_i[reversed]" in out
    assert "holding_conventions : ['reversed']" in out


def test_mismatches_exit_zero(capsys):
    code, out, _ = run(capsys, "audit", "kenmotsu5d", "--section", "8", "--format", "machine")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "fail"


def test_malformed_file_exits_nonzero(tmp_path, capsys):
    p = tmp_path / "bad.sm"
    p.write_text('manifold "m"\nframe e1 e2\nmetric diag(1,1)\nbracket [e1, e9] = e1\n', encoding="utf-8")
    code, out, err = run(capsys, "curvature", str(p))
    assert code == 2 and out == ""
    assert "4:14: reference error" in err


def test_structural_error_exits_nonzero(tmp_path, capsys):
    p = tmp_path / "sing.sm"
    p.write_text('manifold "m"\nframe x y\nmetric diag(1,0)\n', encoding="utf-8")
    code, _, err = run(capsys, "ricci", str(p))
    assert code == 1 and "StructuralError" in err


def test_missing_target(capsys):
    code, _, err = run(capsys, "scalar")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("curvature", "hyperbolic2"),
        ("ricci", "flat3-einstein", "--assign", "b=2"),
        ("scalar", "kenmotsu5d", "--ricci-source", "nabla-star", "--sign", "reversed"),
        ("sectional", "kenmotsu5d", "--pair", "e1,xi", "--assign", "a=0"),
        ("classify", "flat2-einstein", "--connection", "nabla_star_printed"),
        ("sub", "kenmotsu5d", "--tangent", "e1,e3,xi"),
        ("sub", "kenmotsu5d-sub-invariant"),
        ("audit", "flat2-einstein"),
        ("oracle", "hyperbolic2", "--points", "3"),
        ("fixtures",),
    ],
)
def test_commands_run(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out


def test_sectional_value(capsys):
    code, out, _ = run(capsys, "sectional", "kenmotsu5d", "--pair", "e1,xi", "--format", "machine")
    assert json.loads(out)["checks"][0]["value"] == "-1"


def test_unknown_connection_is_structural(capsys):
    code, _, err = run(capsys, "curvature", "hyperbolic2", "--connection", "nope")
    assert code == 1 and "nope" in err


def test_bad_command_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "kenmotsu5d"])
    assert exc.value.code != 0
