import csv
import io
import json
from contextlib import redirect_stdout

import pytest

from src.cli import main
from src.orbits.orbit_model import farey_slopes


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_generators(capsys):
    code, out = run(capsys, "generators", "--degree", "2", "--genus", "3")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 10
    assert {row["orbit_set"] for row in rows} >= {"e[1/2]", "h[1/2]", "e0^2"}


def test_index_of_one_set(capsys):
    code, out = run(capsys, "index", "--set", "e[1/2]", "--genus", "3", "--degree-bound", "2")
    assert code == 0
    row = json.loads(out)
    assert row["index_sum"] == 2


def test_index_with_fibre_shift(capsys):
    code, out = run(capsys, "index", "--set", "e0^2", "--genus", "5", "--degree", "2", "--fiber-mult", "1")
    assert code == 0
    assert json.loads(out)["index_shifted"] == -4


def test_qtau_oracle_sweep(capsys):
    code, out = run(capsys, "qtau", "--max-q", "12", "--verify-oracle")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    n = len(farey_slopes(12))
    assert len(rows) == n * (n + 1) // 2 == 1128
    assert all(row["agree"] for row in rows)


def test_qtau_of_set(capsys):
    code, out = run(capsys, "qtau", "--set", "e1 e[1/2]")
    assert code == 0
    assert json.loads(out)["q_tau"] == 1


def test_energy(capsys):
    code, out = run(capsys, "energy", "--set", "e[1/2]^2", "--genus", "6", "--degree", "4", "--fiber-mult", "-1")
    assert code == 0
    row = json.loads(out)
    assert row["energy"] == pytest.approx(1.0)
    assert row["total"] == pytest.approx(1.0 - 16.0)
    assert row["admissible"] is False


def test_parse_error_exit_code(capsys):
    code, out = run(capsys, "index", "--set", "e[1/2")
    assert code == 2
    assert out == ""


def test_domain_error_exit_code(capsys):
    assert run(capsys, "index", "--set", "e[2/4]")[0] == 1
    assert run(capsys, "verify-orbit", "--slope", "1/1")[0] == 1


def test_invalid_profile_exit_code(capsys):
    # Q = g(F) - 1 is excluded
    code, _ = run(capsys, "index", "--set", "e0", "--genus", "3", "--degree", "2", "--fiber-mult", "1")
    assert code == 1


def test_verify_orbit_report(capsys):
    code, out = run(capsys, "verify-orbit", "--slope", "2/3", "--y0", "0.7", "--samples", "256")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert {check["name"] for check in report["checks"]} >= {"base_modulus", "y_advance"}


def test_verify_orbit_tight_tolerance_fails(capsys):
    code, out = run(capsys, "verify-orbit", "--slope", "1/3", "--tol", "1e-30")
    assert code == 3
    assert json.loads(out)["passed"] is False


def test_verify_pullback(capsys):
    code, out = run(capsys, "verify-pullback", "--samples", "20", "--direction", "vertical")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_homology(capsys):
    code, out = run(capsys, "homology", "--genus", "2")
    assert code == 0
    data = json.loads(out)
    assert data["H1(Y)"]["free_rank"] == 4
    assert data["H1(X)"]["free_rank"] == 3


def test_cobordism_rows_and_audit(capsys):
    code, out = run(capsys, "cobordism", "--degree", "2", "--genus", "8")
    assert code == 0
    assert sum(json.loads(line)["value"] for line in out.splitlines()) == 3
    code, out = run(capsys, "cobordism", "--degree", "2", "--genus", "8", "--audit")
    assert code == 0
    assert json.loads(out)["clean"] is True


def test_cobordism_intermediate(capsys):
    code, out = run(capsys, "cobordism", "--degree", "3", "--genus", "7")
    assert code == 0
    assert {json.loads(line)["value"] for line in out.splitlines()} == {"not_computed"}


def test_output_is_deterministic(capsys):
    first = run(capsys, "generators", "--degree", "4", "--morse-saddle", "1")[1]
    second = run(capsys, "generators", "--degree", "4", "--morse-saddle", "1")[1]
    assert first == second


def test_csv_matches_json(capsys):
    json_rows = [json.loads(line) for line in run(capsys, "index", "--degree", "3")[1].splitlines()]
    csv_rows = list(csv.DictReader(io.StringIO(run(capsys, "index", "--degree", "3", "--format", "csv")[1])))
    assert len(csv_rows) == len(json_rows)
    for json_row, csv_row in zip(json_rows, csv_rows):
        assert {key: str(value) for key, value in json_row.items()} == csv_row


def test_table_format(capsys):
    code, out = run(capsys, "generators", "--degree", "1", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["orbit_set", "degree", "hyperbolic"]
    assert len(lines) == 5


def test_config_file_and_flag_precedence(capsys, tmp_path, monkeypatch):
    config = tmp_path / "run.yaml"
    config.write_text("degree: 1\ngenus: 5\nformat: csv\n", encoding="utf-8")
    monkeypatch.setenv("PFHKIT_CONFIG", str(config))
    out = run(capsys, "generators")[1]
    assert out.splitlines()[0] == "orbit_set,degree,hyperbolic"
    assert len(out.splitlines()) == 5
    out = run(capsys, "generators", "--config", str(config), "--format", "json")[1]
    assert len([json.loads(line) for line in out.splitlines()]) == 4


def test_config_file_rejects_unknown_keys(capsys, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("degree: 1\nshape: round\n", encoding="utf-8")
    assert run(capsys, "generators", "--config", str(config))[0] == 1


def test_selfcheck_small(capsys):
    code, out = run(capsys, "selfcheck", "--small")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_output_follows_redirected_stdout():
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(["generators", "--degree", "2", "--genus", "3"])
    assert code == 0
    assert len(buffer.getvalue().splitlines()) == 10
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(["verify-orbit", "--slope", "2/5"])
    assert code == 0
    assert json.loads(buffer.getvalue())["passed"] is True


def test_non_ascii_multiplicity_is_a_parse_error(capsys):
    code, out = run(capsys, "index", "--set", "e[1/2]^²")
    assert code == 2
    assert out == ""


def test_lambda_flag_reaches_orbit_report(capsys):
    code, out = run(capsys, "verify-orbit", "--slope", "1/12", "--lambda", "0.01")
    assert code == 0
    details = json.loads(out)["details"]
    assert details["half_width"] == 0.01
    assert details["inside_annulus"] is False
    code, out = run(capsys, "verify-orbit", "--slope", "1/12")
    assert json.loads(out)["details"]["inside_annulus"] is True


def test_zero_pullback_samples_rejected(capsys):
    code, out = run(capsys, "verify-pullback", "--samples", "0")
    assert code == 1
    assert out == ""


def test_shipped_defaults_are_the_base_layer(capsys, tmp_path, monkeypatch):
    shipped = tmp_path / "shipped.yaml"
    shipped.write_text("degree: 1\nformat: table\n", encoding="utf-8")
    monkeypatch.setattr("src.cli.DEFAULT_CONFIG", shipped)
    out = run(capsys, "generators")[1]
    assert out.splitlines()[0].split() == ["orbit_set", "degree", "hyperbolic"]
    assert len(out.splitlines()) == 5
    override = tmp_path / "run.yaml"
    override.write_text("format: json\n", encoding="utf-8")
    assert len(run(capsys, "generators", "--config", str(override))[1].splitlines()) == 4
