from __future__ import annotations

import json

import pytest

from saw_lab import __version__
from saw_lab.cli import main
from saw_lab.output.schema import validate_document
from saw_lab.parser.walk_text import parse_walk


def invoke(runner, tmp_path, *args, name="out.json"):
    """Run a quiet subcommand writing to a file; return (result, parsed document or None)."""
    out = tmp_path / name
    result = runner.invoke(main, ["--quiet", *args, "-o", str(out)])
    document = json.loads(out.read_text()) if out.exists() else None
    return result, document


class TestEnumerate:
    def test_count(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "4", "--threads", "1")
        assert result.exit_code == 0, result.output
        assert doc["total"] == "100"
        assert doc["entries"] == [{"key": "total", "count": "100"}]
        assert "threads" not in doc["config"] and "output" not in doc["config"]
        assert doc["config"]["n"] == 4
        assert validate_document(doc) == []

    def test_hang_histogram_of_closing_walks(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "3", "--class", "closing",
                             "--report", "hang", "--threads", "1")
        assert result.exit_code == 0, result.output
        assert [(e["key"], e["count"], e["probability"]) for e in doc["entries"]] == [
            (str(i), "2", "1/4") for i in range(4)
        ]
        assert doc["summary"]["uniform"] is True

    def test_endpoint(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "2", "--report", "endpoint",
                             "--threads", "1")
        assert result.exit_code == 0, result.output
        assert doc["summary"] == {"sup": "1/6", "symmetric": True}
        assert len(doc["entries"]) == 8

    def test_closing(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "3", "--report", "closing",
                             "--threads", "1")
        assert result.exit_code == 0, result.output
        assert doc["summary"]["closing_probability"] == "2/9"

    def test_series(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "4", "--report", "series",
                             "--threads", "1")
        assert result.exit_code == 0, result.output
        assert [e["count"] for e in doc["entries"]] == ["1", "4", "12", "36", "100"]
        assert doc["summary"]["submultiplicative"] is True

    def test_midpoint(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "4", "--report", "midpoint",
                             "--threads", "1")
        assert result.exit_code == 0, result.output
        assert doc["summary"]["index"] == 2
        assert doc["summary"]["sup"] == "4/25"

    def test_negative_length_is_a_usage_error(self, runner):
        result = runner.invoke(main, ["enumerate", "-n", "-1"])
        assert result.exit_code == 2

    def test_infeasible_size(self, runner):
        result = runner.invoke(main, ["--quiet", "enumerate", "-n", "30"])
        assert result.exit_code == 3
        assert "Error:" in result.output

    def test_force_past_feasibility(self, runner, tmp_path, mocker):
        mocker.patch.dict("saw_lab.config.FEASIBLE_N", {2: {"walk": 3}})
        result, _ = invoke(runner, tmp_path, "enumerate", "-n", "4", "--threads", "1")
        assert result.exit_code == 3
        result, doc = invoke(runner, tmp_path, "enumerate", "-n", "4", "--threads", "1",
                             "--force")
        assert result.exit_code == 0, result.output
        assert doc["warnings"] == ["forced past feasibility table: n=4 > 3 for walk"]

    def test_csv(self, runner):
        result = runner.invoke(main, ["--quiet", "enumerate", "-n", "1", "--report", "endpoint",
                                      "--format", "csv", "--threads", "1"])
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines[0] == "# subcommand: enumerate"
        assert "key,count,probability" in lines
        assert lines[-1] == "\"(1,0)\",1,1/4"

    def test_terminal(self, runner):
        result = runner.invoke(main, ["--quiet", "--no-color", "enumerate", "-n", "3",
                                      "--format", "terminal", "--threads", "1"])
        assert result.exit_code == 0, result.output
        assert "total=36" in result.output


class TestVerify:
    def test_passing_suite(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "verify", "--suite", "oracle", "-n", "3",
                             "--threads", "1")
        assert result.exit_code == 0, result.output
        assert doc["passed"] is True
        assert doc["suites"] == ["oracle"]
        assert validate_document(doc) == []

    def test_failing_suite(self, runner, tmp_path, mocker):
        mocker.patch(
            "saw_lab.verify.suites.oracle_counts",
            return_value={"walk": 0, "bridge": 0, "halfspace": 0, "closing": 0},
        )
        result, doc = invoke(runner, tmp_path, "verify", "--suite", "oracle", "-n", "2",
                             "--threads", "1")
        assert result.exit_code == 1
        assert doc["failed"] == ["oracle.class_counts"]
        assert "FAILED oracle.class_counts" in result.output

    def test_unknown_suite(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "nope"])
        assert result.exit_code == 2


class TestSample:
    ARGS = ("sample", "--ladder", "8,16,32", "--samples", "30", "--seed", "3", "--bootstrap", "5")

    def test_ladder(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, *self.ARGS)
        assert result.exit_code == 0, result.output
        assert [p["n"] for p in doc["points"]] == [8, 16, 32]
        assert doc["config"]["ladder"] == [8, 16, 32]
        assert doc["two_nu"] is not None
        assert validate_document(doc) == []

    def test_output_is_reproducible(self, runner, tmp_path):
        runner.invoke(main, ["--quiet", *self.ARGS, "--threads", "1", "-o", str(tmp_path / "a.json")])
        runner.invoke(main, ["--quiet", *self.ARGS, "--threads", "2", "-o", str(tmp_path / "b.json")])
        first = (tmp_path / "a.json").read_bytes()
        assert first and first == (tmp_path / "b.json").read_bytes()

    def test_single_length(self, runner, tmp_path):
        result, doc = invoke(runner, tmp_path, "sample", "-n", "10", "--samples", "5")
        assert result.exit_code == 0, result.output
        assert [p["n"] for p in doc["points"]] == [10]
        assert doc["two_nu"] is None

    def test_dump(self, runner, tmp_path):
        dump = tmp_path / "walks.txt"
        result, _ = invoke(runner, tmp_path, "sample", "--ladder", "6,12", "--samples", "4",
                           "--bootstrap", "0", "--dump", str(dump))
        assert result.exit_code == 0, result.output
        lines = dump.read_text().splitlines()
        assert len(lines) == 8
        assert [parse_walk(line, dim=2).n for line in lines] == [6] * 4 + [12] * 4

    def test_length_and_ladder_conflict(self, runner):
        result = runner.invoke(main, ["sample", "-n", "10", "--ladder", "10,20"])
        assert result.exit_code == 2

    @pytest.mark.parametrize("probe", ["0,4", "x"])
    def test_bad_probe(self, runner, probe):
        result = runner.invoke(main, ["sample", "-n", "10", "--probe", probe])
        assert result.exit_code == 2


class TestReport:
    def test_renders_valid_document(self, runner, tmp_path):
        invoke(runner, tmp_path, "enumerate", "-n", "4", "--threads", "1")
        result = runner.invoke(main, ["--no-color", "report", str(tmp_path / "out.json")])
        assert result.exit_code == 0, result.output
        assert "total=100" in result.output

    def test_rejects_schema_violation(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema": "count_report", "schema_version": 1}))
        result = runner.invoke(main, ["report", str(path)])
        assert result.exit_code == 2
        assert "missing required field" in result.output

    def test_rejects_non_json(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json")
        result = runner.invoke(main, ["report", str(path)])
        assert result.exit_code == 2


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output
