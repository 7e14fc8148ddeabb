"""Command-line surface, driven through Typer's runner."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from screwdyn import __version__
from screwdyn.checks import CheckReport, CheckResult
from screwdyn.cli.main import app

runner = CliRunner()


def test_version() -> None:
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout


class TestIdyn:
    def test_json_summary(self, tmp_path: Path) -> None:
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps({"model": "x.json", "trajectory": {"duration": 0.05, "rate": 100}, "output": "q.csv"}),
            encoding="utf-8",
        )
        result = runner.invoke(app, ["idyn", "-c", str(config), "-m", "two_r", "--order", "1", "--json"])
        assert result.exit_code == 0, result.stdout
        data = json.loads(result.stdout)
        assert data["model"] == "two_r"
        assert data["samples"] == 6
        assert data["order"] == 1
        assert (tmp_path / "q.csv").exists()

    def test_rich_summary(self, tmp_path: Path) -> None:
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps({"model": "x.json", "trajectory": {"duration": 0.01, "rate": 100}}), encoding="utf-8"
        )
        out = tmp_path / "forces.csv"
        result = runner.invoke(app, ["idyn", "-c", str(config), "-m", "pendulum", "--out", str(out)])
        assert result.exit_code == 0, result.stdout
        assert "idyn" in result.stdout
        assert out.exists()

    def test_missing_model(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["idyn", "-m", str(tmp_path / "absent.json")])
        assert result.exit_code == 2
        assert "not found" in result.stdout

    def test_nothing_to_run(self) -> None:
        assert runner.invoke(app, ["idyn"]).exit_code == 2

    def test_bad_config(self, tmp_path: Path) -> None:
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"model": "x.json", "order": 7}), encoding="utf-8")
        result = runner.invoke(app, ["idyn", "-c", str(config)])
        assert result.exit_code == 2
        assert "order" in result.stdout

    def test_invalid_model_file(self, tmp_path: Path) -> None:
        bad = tmp_path / "robot.json"
        bad.write_text('{"name": "broken"}', encoding="utf-8")
        result = runner.invoke(app, ["idyn", "-m", str(bad)])
        assert result.exit_code == 2


class TestCheck:
    def test_clean_run(self) -> None:
        result = runner.invoke(app, ["check", "-m", "two_r", "-n", "20", "--json"])
        assert result.exit_code == 0, result.stdout
        data = json.loads(result.stdout)
        assert data["clean"] is True
        assert all(r["passed"] for r in data["results"])

    def test_failure_exits_one(self, monkeypatch: pytest.MonkeyPatch) -> None:
        def failing(model: object, **_: object) -> CheckReport:
            return CheckReport("two_r", [CheckResult("broken identity", 1.0, 1e-12, 1)])

        monkeypatch.setattr("screwdyn.cli.commands.check.run_checks", failing)
        result = runner.invoke(app, ["check", "-m", "two_r"])
        assert result.exit_code == 1
        assert "broken identity" in result.stdout


def test_bench_json() -> None:
    result = runner.invoke(app, ["bench", "-m", "two_r", "-r", "25", "--seed", "3", "--json"])
    assert result.exit_code == 0, result.stdout
    data = json.loads(result.stdout)
    assert data["reps"] == 25
    assert data["mean_s"] > 0


def test_bench_warns_on_few_reps() -> None:
    result = runner.invoke(app, ["bench", "-m", "two_r", "-r", "25"])
    assert result.exit_code == 0, result.stdout
    assert "only 25 reps" in result.stdout
    assert "1000" in result.stdout


class TestModel:
    def test_list(self) -> None:
        result = runner.invoke(app, ["model", "list"])
        assert result.exit_code == 0
        for name in ("two_r", "kuka_iiwa14", "pendulum"):
            assert name in result.stdout

    def test_validate_shipped(self) -> None:
        result = runner.invoke(app, ["model", "validate", "kuka_iiwa14"])
        assert result.exit_code == 0
        assert "7-joint" in result.stdout

    def test_validate_reports_field(self, tmp_path: Path) -> None:
        dumped = runner.invoke(app, ["model", "dump", "two_r"]).stdout
        data = json.loads(dumped)
        data["bodies"][0]["mass"] = -1.0
        bad = tmp_path / "robot.json"
        bad.write_text(json.dumps(data), encoding="utf-8")
        result = runner.invoke(app, ["model", "validate", str(bad)])
        assert result.exit_code == 2
        assert "mass" in result.stdout

    def test_dump_round_trips(self, tmp_path: Path) -> None:
        dumped = runner.invoke(app, ["model", "dump", "two_r"]).stdout
        path = tmp_path / "copy.json"
        path.write_text(dumped, encoding="utf-8")
        assert runner.invoke(app, ["model", "dump", str(path)]).stdout == dumped
