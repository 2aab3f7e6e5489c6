import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lorentz_euler.cli import RunConfig, _attach_values, default_workers, main
from lorentz_euler.config import DEFAULTS
from lorentz_euler.families import FamilyClass

SRC = Path(__file__).resolve().parents[1] / "src"


@pytest.fixture(autouse=True)
def no_output_dir(monkeypatch):
    monkeypatch.delenv(DEFAULTS.cli.output_env, raising=False)


def run_cli(*args, output_dir=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(SRC), env.get("PYTHONPATH")]))
    if output_dir is not None:
        env[DEFAULTS.cli.output_env] = str(output_dir)
    cmd = [sys.executable, "-m", "lorentz_euler", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


@pytest.mark.system
def test_verify_a_stationary_member():
    r = run_cli("verify", "--family", "spacelike-cminus", "--alpha", "2", "--domain", "-3:3",
                "--samples", "200", "--tol", "1e-8")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["verdict"] is True
    assert len(report["samples"]) == 200


@pytest.mark.system
def test_verify_a_circle_for_the_wrong_alpha():
    r = run_cli("verify", "--circle", "hyperbolic", "--center", "0,0", "--radius", "1",
                "--alpha", "2", "--tol", "1e-8")
    assert r.returncode == 1
    assert json.loads(r.stdout)["verdict"] is False


@pytest.mark.system
def test_inversion_image_verifies_at_the_inverted_alpha():
    r = run_cli("transform", "--op", "inversion", "--family", "spacelike-cminus", "--alpha", "0.5")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["verdict"] is True


@pytest.mark.system
def test_generate_is_deterministic(tmp_path):
    args = ["generate", "--family", "spacelike-cplus", "--alpha", "0.5", "--samples", "50"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(*args, "--output", str(first)).returncode == 0
    assert run_cli(*args, "--output", str(second)).returncode == 0
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    assert lines[0] == "s,x,y,rho,phi,kappa,residual,region,causal"
    assert len(lines) == 51


@pytest.mark.system
def test_output_directory_from_the_environment(tmp_path):
    r = run_cli("verify", "--inverse-line", "cminus", "--alpha", "2", output_dir=tmp_path)
    assert r.returncode == 0, r.stderr
    assert r.stdout == ""
    assert json.loads((tmp_path / "verify.json").read_text())["verdict"] is True


@pytest.mark.system
def test_library_errors_are_reported_as_json():
    r = run_cli("transform", "--op", "dilate", "--lambda", "-1", "--family", "spacelike-cminus",
                "--alpha", "2")
    assert r.returncode == 1
    assert r.stdout == ""
    error = json.loads(r.stderr.strip().splitlines()[-1])
    assert error["error"] == "NonpositiveScale"


@pytest.mark.parametrize("argv", [
    ["verify", "--alpha", "2"],
    ["verify", "--family", "spacelike-cminus", "--alpha", "2", "--domain", "3:1"],
    ["verify", "--family", "spacelike-cminus", "--circle", "hyperbolic", "--alpha", "2"],
    ["glue", "--alpha", "1"],
    ["maximize", "--p1", "1,0", "--alpha", "2"],
    ["maximize", "--p1", "1,0", "--p2", "2,0", "--alpha", "2", "--format", "csv"],
    ["frobnicate"],
])
def test_invalid_arguments(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().out == ""


def test_attach_values():
    assert _attach_values(["--domain", "-3:3", "--alpha", "2"]) == ["--domain=-3:3", "--alpha", "2"]
    assert _attach_values(["--p2", "-2,0"]) == ["--p2=-2,0"]


def test_run_config_defaults():
    config = RunConfig(command="generate", family="spacelike-cminus", alpha=2.0)
    assert config.output_format.value == "csv"
    assert config.samples == DEFAULTS.cli.samples
    assert RunConfig(command="sweep", family="timelike-cplus").output_format.value == "json"


def test_sweep_workers_default_to_the_cpu_count():
    workers = RunConfig(command="sweep", family="timelike-cplus").workers
    assert workers == default_workers() == min(os.cpu_count() or 1, DEFAULTS.cli.workers)
    assert RunConfig(command="sweep", family="timelike-cplus", workers=2).workers == 2


def test_sweep(capsys):
    code = main(["sweep", "--family", "spacelike-cminus", "--alphas", "0.5", "1", "2",
                 "--workers", "4", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "index,alpha,label,max_abs_residual,verdict,error"
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "1", "2"]
    assert "c=0.5" in lines[2]


def test_sweep_reports_failed_members(capsys):
    code = main(["sweep", "--family", "spacelike-cplus", "--alphas", "0.5", "--domain", "-1:1"])
    assert code == 1
    report = json.loads(capsys.readouterr().out)
    assert report["rows"][0]["error"].startswith("DomainViolation")


def test_maximize(capsys):
    code = main(["maximize", "--p1", "1,0", "--p2", "2,0", "--alpha", "2",
                 "--competitors", "10", "--seed", "1"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["segment_energy"] == pytest.approx(7.0 / 3.0)
    assert len(report["competitor_energies"]) == 10


def test_glue(capsys):
    assert main(["glue", "--alpha", "-2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["closed"] is True
    assert report["closure_gap"] <= 1e-9
    assert len(report["pieces"]) == 4
    assert main(["glue", "--alpha", "2", "--samples", "20"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 1 + 2 * 20


@pytest.mark.parametrize("family", [f.value for f in FamilyClass])
def test_sweep_over_the_default_grid(family, capsys):
    assert main(["sweep", "--family", family]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [row["alpha"] for row in report["rows"]] == DEFAULTS.cli.alpha_grid
    assert all(row["verdict"] and row["max_abs_residual"] <= 1e-8 for row in report["rows"])


@pytest.mark.system
def test_glue_from_the_command_line():
    result = run_cli("glue", "--alpha", "-2", "--format", "json")
    assert result.returncode == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["verdict"] and report["closed"]
    assert report["closure_gap"] <= 1e-9
    assert all(piece["max_abs_residual"] <= 1e-8 for piece in report["pieces"])
    assert {s["causal"] for piece in report["pieces"] for s in piece["samples"]} == {"spacelike", "timelike"}
