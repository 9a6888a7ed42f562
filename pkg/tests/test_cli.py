"""Command-line interface: outputs, exit codes, file round-trips.

Everything drives main(argv) in-process and captures stdout/stderr, so
the suite exercises exactly what a shell user would see.
"""

import json

import pytest

from symmetroids.cli import (
    EXIT_BUDGET,
    EXIT_DEGENERATE,
    EXIT_FAIL,
    EXIT_OK,
    EXIT_UNCERTIFIED,
    EXIT_USAGE,
    main,
)
from symmetroids.matrices import (
    DegreeType,
    SymmetricFormMatrix,
    dump_json_bytes,
    matrix_to_json_dict,
)
from symmetroids.fields import PrimeField


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# enumerate


def test_enumerate_text(capsys):
    code, out, err = run(capsys, "enumerate", "--d", "4", "--delta", "0")
    assert code == EXIT_OK
    assert out.splitlines() == ["(2,2)", "(0,2,2)", "(0,0,2,2)"]


def test_enumerate_json(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--d", "4", "--delta", "1", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload[0] == {"d": 4, "delta": 1, "degree_type": [1, 3]}


def test_enumerate_smooth_profile(capsys):
    code, out, _ = run(
        capsys,
        "enumerate", "--d", "5", "--delta", "0", "--profile", "smooth-section",
    )
    assert code == EXIT_OK
    assert out.splitlines() == ["(1,1,3)", "(1,1,1,1,1)"]


def test_enumerate_constraint_override(capsys):
    code, out, _ = run(
        capsys,
        "enumerate", "--d", "4", "--delta", "0",
        "--constraints", "determinant_nonzero,twist_positive,smooth_plane_section",
    )
    assert code == EXIT_OK
    assert "(0,2,2)" not in out.splitlines()


def test_enumerate_rejects_bad_delta(capsys):
    code, _, _ = run(capsys, "enumerate", "--d", "4", "--delta", "2")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# build


def test_build_writes_matrix(tmp_path, capsys):
    out_file = tmp_path / "m22.json"
    code, out, _ = run(
        capsys,
        "build", "--type", "(2,2)", "--d", "4", "--delta", "0",
        "--seed", "1", "--out", str(out_file),
    )
    assert code == EXIT_OK
    assert "det degree 4" in out
    obj = json.loads(out_file.read_text())
    assert obj["degree_type"] == [2, 2]
    assert obj["d"] == 4 and obj["delta"] == 0
    assert "entries" in obj


def test_build_json_format(tmp_path, capsys):
    out_file = tmp_path / "m13.json"
    code, out, _ = run(
        capsys,
        "build", "--type", "(1,3)", "--d", "4", "--delta", "1",
        "--out", str(out_file), "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["degree_type"] == [1, 3]
    assert payload["det_degree"] == 4
    assert len(payload["sha256"]) == 12


def test_build_rejects_invalid_type(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "build", "--type", "(1,2)", "--d", "4", "--delta", "0",
        "--out", str(tmp_path / "x.json"),
    )
    assert code == EXIT_USAGE
    assert "invalid degree type" in err


def test_build_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "build", "--type", "(2,2)", "--d", "4", "--delta", "0",
        "--seed", "7", "--out", str(a))
    run(capsys, "build", "--type", "(2,2)", "--d", "4", "--delta", "0",
        "--seed", "7", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# nodes


def build_matrix_file(tmp_path, type_str, d, delta, seed=1):
    out_file = tmp_path / f"m{type_str}{seed}.json"
    code = main([
        "build", "--type", type_str, "--d", str(d), "--delta", str(delta),
        "--seed", str(seed), "--out", str(out_file),
    ])
    assert code == EXIT_OK
    return out_file


def test_nodes_on_built_matrix(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, out, _ = run(capsys, "nodes", str(matrix_file), "--seed", "1")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["t"] == 8
    assert payload["reduced_certified"] is True
    assert payload["rank_drop_consistent"] is True


def test_nodes_report_file_and_one_liner(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(1,3)", 4, 1)
    report_file = tmp_path / "report.json"
    capsys.readouterr()
    code, out, _ = run(
        capsys, "nodes", str(matrix_file), "--out", str(report_file)
    )
    assert code == EXIT_OK
    assert "t=6" in out
    saved = json.loads(report_file.read_text())
    assert saved["t"] == 6
    assert saved["seed"] == 1


def test_nodes_degenerate_matrix(tmp_path, capsys):
    # duplicate index 1 as a copy of index 2 (row and column) so the
    # matrix stays symmetric with two equal rows and det == 0
    field = PrimeField(31991)
    dt = DegreeType(4, 0, (0, 2, 2))
    template = SymmetricFormMatrix.random(dt, field, seed=1)
    e = template.entries
    rows = [list(r) for r in e]
    for j in range(3):
        rows[1][j] = e[2][j]
        rows[j][1] = e[j][2]
    rows[1][1] = e[2][2]
    obj = matrix_to_json_dict(
        SymmetricFormMatrix.from_rows(dt, e[2][2].ring, rows)
    )
    bad = tmp_path / "degenerate.json"
    bad.write_bytes(dump_json_bytes(obj))
    code, _, err = run(capsys, "nodes", str(bad))
    assert code == EXIT_DEGENERATE


def test_nodes_budget_exhaustion(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, _, err = run(
        capsys, "nodes", str(matrix_file), "--pair-budget", "1"
    )
    assert code == EXIT_BUDGET


def test_nodes_missing_file(capsys):
    code, _, err = run(capsys, "nodes", "/no/such/file.json")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# cohomology


def test_cohomology_section_table(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, out, _ = run(
        capsys,
        "cohomology", str(matrix_file), "--mode", "section",
        "--m-min", "-2", "--m-max", "3",
    )
    assert code == EXIT_OK
    assert "duality symmetry: ok" in out


def test_cohomology_json_rows(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, out, _ = run(
        capsys,
        "cohomology", str(matrix_file), "--mode", "section",
        "--m-min", "-2", "--m-max", "3", "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    by_m = {row["m"]: row for row in payload["rows"]}
    assert by_m[1]["h0"] == 2
    assert by_m[0]["h1"] == 2
    assert by_m[0]["chi"] == -2


def test_cohomology_surface_chi_check(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, out, _ = run(
        capsys,
        "cohomology", str(matrix_file), "--mode", "surface", "--t", "8",
    )
    assert code == EXIT_OK
    assert "chi == (8 - t)/4: ok" in out
    code, out, _ = run(
        capsys,
        "cohomology", str(matrix_file), "--mode", "surface", "--t", "4",
    )
    assert code == EXIT_FAIL


def test_cohomology_narrow_range_skips_duality(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, out, _ = run(
        capsys,
        "cohomology", str(matrix_file), "--mode", "section",
        "--m-min", "5", "--m-max", "6",
    )
    assert code == EXIT_OK
    assert "range too small" in out


def test_cohomology_bad_range(tmp_path, capsys):
    matrix_file = build_matrix_file(tmp_path, "(2,2)", 4, 0)
    capsys.readouterr()
    code, _, _ = run(
        capsys,
        "cohomology", str(matrix_file), "--m-min", "3", "--m-max", "1",
    )
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# verify-case


def test_verify_case_passes(capsys):
    code, out, _ = run(capsys, "verify-case", "enumeration-all")
    assert code == EXIT_OK
    assert "PASS" in out


def test_verify_case_json(capsys):
    code, out, _ = run(capsys, "verify-case", "cayley-cubic", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["scenario"] == "cayley-cubic"
    assert payload["passed"] is True


def test_verify_case_unknown(capsys):
    code, _, err = run(capsys, "verify-case", "not-a-scenario")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# kummer-search


def test_kummer_search_writes_fixture(tmp_path, capsys):
    out_file = tmp_path / "fixture.json"
    code, out, _ = run(
        capsys,
        "kummer-search", "--seed", "1", "--budget", "2", "--out", str(out_file),
    )
    assert code == EXIT_OK
    assert "t=16" in out
    fixture = json.loads(out_file.read_text())
    assert fixture["report"]["t"] == 16
    # the fixture doubles as a surface file for the nodes command
    capsys.readouterr()
    code, out, _ = run(capsys, "nodes", str(out_file), "--seed", "2")
    assert code == EXIT_OK
    assert json.loads(out)["t"] == 16


def test_kummer_search_tiny_field_is_usage_error(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "kummer-search", "--p", "13", "--out", str(tmp_path / "x.json"),
    )
    assert code == EXIT_USAGE
    assert "p > 16" in err


# ---------------------------------------------------------------------------
# top-level behavior


def test_no_command_is_usage(capsys):
    assert main([]) == EXIT_USAGE


def test_help_exits_ok(capsys):
    assert main(["--help"]) == EXIT_OK


def test_unknown_flag_is_usage(capsys):
    assert main(["enumerate", "--d", "4", "--delta", "0", "--bogus"]) == EXIT_USAGE
