"""
End-to-end tests of the cpc command line through main.run.
"""

import json
from pathlib import Path

import jsonschema
import pytest

from Cli.cpc_config import CpcConfig
from main import run
from Output_Generation.report_json import command_schema

FAST = ["--samples", "6"]
SHIPPED_SCHEMA = Path(__file__).parent / "docs" / "report_schema.json"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for variable in ("CPC_SEED", "CPC_SAMPLES", "CPC_WORKERS", "CPC_LOG_LEVEL"):
        monkeypatch.delenv(variable, raising=False)


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ------------------------------------------------------------------ zoo

def test_zoo_list(capsys):
    code, out, _ = _run(capsys, "zoo", "list")
    assert code == 0
    assert out.startswith("# Built-in manifolds")
    assert "- s3_x_s1 (dim 4, type (1,0))" in out
    assert "- sphere2 (dim 2, plain)" in out


def test_zoo_list_json(capsys):
    code, out, _ = _run(capsys, "zoo", "list", "--json")
    listing = json.loads(out)
    assert code == 0
    assert len(listing) == 9
    assert {"name": listing[0]["name"], "dim": listing[0]["dim"]} == {"name": "euclidean4", "dim": 4}


def test_zoo_show(capsys):
    code, out, _ = _run(capsys, "zoo", "show", "s3_x_s3")
    assert code == 0
    assert "contact pair of type (1,1)" in out
    assert "## Expected values" in out
    assert "| Ric(Z,Z) | 4 | PAPER |" in out


def test_unknown_zoo_entry_is_a_usage_error(capsys):
    code, out, err = _run(capsys, "zoo", "show", "klein_bottle")
    assert code == 2
    assert out == ""
    assert "klein_bottle" in err


# ------------------------------------------------------------------ verify

def test_verify_builtin_pair(capsys):
    code, out, _ = _run(capsys, "verify", "zoo:s3_x_s1", *FAST)
    assert code == 0
    assert out.startswith("# Verification of s3_x_s1")
    assert "**Result:** all checks passed" in out


def test_verify_failing_pair_exits_one(capsys):
    code, out, _ = _run(capsys, "verify", "zoo:flat_pair4", *FAST)
    assert code == 1
    assert "4 check(s) failed" in out


def test_exported_file_verifies_like_the_builtin(capsys, tmp_path):
    _, spec, _ = _run(capsys, "zoo", "export", "s3_x_s1")
    path = tmp_path / "s3_x_s1.cpc"
    path.write_text(spec, encoding="utf-8")
    from_file = _run(capsys, "verify", str(path), *FAST, "--json")
    from_zoo = _run(capsys, "verify", "zoo:s3_x_s1", *FAST, "--json")
    assert from_file[0] == from_zoo[0] == 0
    assert from_file[1] == from_zoo[1]


def test_malformed_spec_reports_line(capsys, tmp_path):
    path = tmp_path / "broken.cpc"
    path.write_text("[manifold]\nname = broken\ndim = 2\n[box]\n0 = 0, 1\n1 = 0, 1\n[metric]\n0 0 = 1 +\n1 1 = 1\n",
                    encoding="utf-8")
    code, out, err = _run(capsys, "verify", str(path))
    assert code == 2
    assert out == ""
    assert f"{path}:8:" in err


def test_verify_without_pair_notes_the_skip(capsys):
    code, out, _ = _run(capsys, "verify", "zoo:sphere3", *FAST)
    assert code == 0
    assert "no [pair] section: contact pair structure checks skipped" in out


def test_runs_are_deterministic(capsys):
    first = _run(capsys, "verify", "zoo:s3_x_s3", *FAST, "--seed", "3", "--json")
    second = _run(capsys, "verify", "zoo:s3_x_s3", *FAST, "--seed", "3", "--workers", "2", "--json")
    assert first[1] == second[1]
    report = json.loads(first[1])
    assert report["metadata"]["seed"] == 3
    assert report["metadata"]["samples"] == 6


# ------------------------------------------------------------------ curvature, flatness, einstein

def test_curvature_at_a_point(capsys):
    code, out, _ = _run(capsys, "curvature", "zoo:sphere2", "--at", "1.0,0.3")
    assert code == 0
    assert "**Point:** (1, 0.3)" in out
    code, out, _ = _run(capsys, "curvature", "zoo:sphere2", "--at", "1.0,0.3", "--json")
    assert json.loads(out)["scal_min"] == pytest.approx(2.0)


def test_curvature_bad_point(capsys):
    code, _, err = _run(capsys, "curvature", "zoo:sphere2", "--at", "1.0,north")
    assert code == 2
    assert "--at expects comma-separated numbers" in err


def test_flatness_quasi_defaults_are_noted(capsys):
    code, out, _ = _run(capsys, "flatness", "zoo:s3_x_s1", "--tensor", "quasi", *FAST)
    assert code == 0
    assert "a, b not given: defaults (1, -1/(2p+2q)) = (1, -0.5) used" in out
    assert "- Flat: yes" in out


def test_flatness_half_given_params(capsys):
    code, _, err = _run(capsys, "flatness", "zoo:s3_x_s1", "--tensor", "quasi", "--a", "1", *FAST)
    assert code == 2
    assert "--a and --b must be given together" in err


def test_non_flat_result_still_exits_zero(capsys):
    code, out, _ = _run(capsys, "flatness", "zoo:s3_x_s1", "--tensor", "concircular", *FAST)
    assert code == 0
    assert "- Flat: no" in out


def test_einstein_json_uses_lambda_key(capsys):
    code, out, _ = _run(capsys, "einstein", "zoo:sphere4", *FAST, "--json")
    report = json.loads(out)
    assert code == 0
    assert report["lambda"] == pytest.approx(3.0, abs=1e-8)
    assert report["is_einstein"] is True


# ------------------------------------------------------------------ audit

def test_identity_audit_needs_a_pair(capsys):
    code, _, err = _run(capsys, "audit", "zoo:sphere4", "--theorem", "identities", *FAST)
    assert code == 2
    assert "no [pair] section" in err


def test_identity_audit_passes_on_pair(capsys):
    code, out, _ = _run(capsys, "audit", "zoo:s3_x_s3", "--theorem", "identities", *FAST)
    assert code == 0
    assert "**Result:** all checks passed" in out


def test_theorem_audit_does_not_gate(capsys):
    code, out, _ = _run(capsys, "audit", "zoo:s3_x_s1", "--theorem", "conformal", *FAST)
    assert code == 0
    assert "findings do not affect the exit status" in out


def test_quasi_audit_records_default_note(capsys):
    code, out, _ = _run(capsys, "audit", "zoo:s3_x_s1", "--theorem", "quasiconformal", *FAST, "--json")
    report = json.loads(out)
    assert code == 0
    assert report["gating"] is False
    assert report["metadata"]["notes"] == ["a, b not given: defaults (1, -1/(2p+2q)) = (1, -0.5) used"]


def test_html_rendering(capsys, tmp_path):
    target = tmp_path / "audit.html"
    code, out, _ = _run(capsys, "audit", "zoo:s3_x_s1", "--theorem", "concircular", *FAST, "--html", str(target))
    assert code == 0
    html = target.read_text(encoding="utf-8")
    assert "<table>" in html
    assert "<h1>" in html


# ------------------------------------------------------------------ schema and configuration

def test_schema(capsys):
    code, out, _ = _run(capsys, "schema")
    schema = json.loads(out)
    shipped = json.loads(SHIPPED_SCHEMA.read_text(encoding="utf-8"))
    assert code == 0
    assert schema["title"] == shipped["title"] == "cpc reports"
    assert set(schema["$defs"]) == set(shipped["$defs"])
    assert set(schema["commands"]) == set(shipped["commands"]) == {
        "verify", "audit", "flatness", "einstein", "curvature", "zoo show", "zoo list"}
    assert "entries" in schema["$defs"]["AuditReport"]["properties"]
    assert "lambda" in schema["$defs"]["EinsteinReport"]["required"]


@pytest.mark.parametrize("command, argv", [
    ("verify", ["verify", "zoo:s3_x_s1", *FAST]),
    ("audit", ["audit", "zoo:s3_x_s1", "--theorem", "quasiconformal", *FAST]),
    ("flatness", ["flatness", "zoo:s3_x_s1", "--tensor", "quasi", *FAST]),
    ("einstein", ["einstein", "zoo:sphere4", *FAST]),
    ("curvature", ["curvature", "zoo:sphere3", "--at", "0.7,1,2"]),
    ("curvature", ["curvature", "zoo:s3_x_s1", *FAST]),
    ("zoo show", ["zoo", "show", "s3_x_s3"]),
    ("zoo list", ["zoo", "list"]),
])
def test_json_output_validates_against_schema(capsys, command, argv):
    code, out, _ = _run(capsys, *argv, "--json")
    _, printed, _ = _run(capsys, "schema")
    report = json.loads(out)
    assert code == 0
    jsonschema.validate(report, command_schema(command, json.loads(SHIPPED_SCHEMA.read_text(encoding="utf-8"))))
    jsonschema.validate(report, command_schema(command, json.loads(printed)))


def test_schema_rejects_a_report_of_another_command(capsys):
    _, out, _ = _run(capsys, "einstein", "zoo:sphere4", *FAST, "--json")
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(json.loads(out), command_schema("flatness"))


def test_config_defaults():
    config = CpcConfig()
    assert (config.seed, config.samples, config.workers, config.log_level) == (42, 100, 1, "INFO")
    assert config.validate()


def test_config_from_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CPC_SAMPLES", "7")
    monkeypatch.setenv("CPC_SEED", "11")
    monkeypatch.setenv("CPC_LOG_LEVEL", "debug")
    config = CpcConfig.from_env(dotenv_path=str(tmp_path / "absent.env"))
    assert (config.samples, config.seed, config.workers, config.log_level) == (7, 11, 1, "DEBUG")


@pytest.mark.parametrize("variable, value, message", [
    ("CPC_SAMPLES", "0", "CPC_SAMPLES must be at least 1"),
    ("CPC_WORKERS", "two", "CPC_WORKERS must be an integer"),
    ("CPC_LOG_LEVEL", "loud", "CPC_LOG_LEVEL must be one of"),
])
def test_config_rejects_bad_values(monkeypatch, tmp_path, variable, value, message):
    monkeypatch.setenv(variable, value)
    with pytest.raises(ValueError, match=message):
        CpcConfig.from_env(dotenv_path=str(tmp_path / "absent.env"))


def test_bad_environment_exits_two(monkeypatch, capsys):
    monkeypatch.setenv("CPC_SAMPLES", "-3")
    code, _, err = _run(capsys, "zoo", "list")
    assert code == 2
    assert "CPC_SAMPLES" in err


def test_env_samples_reach_the_report(monkeypatch, capsys):
    monkeypatch.setenv("CPC_SAMPLES", "4")
    _, out, _ = _run(capsys, "einstein", "zoo:sphere4", "--json")
    assert json.loads(out)["samples"] == 4
