"""Tests for the command-line driver."""

import csv
import io
import json
import math

import pytest

from repi.cli.cli import EXIT_FAILED, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main
from repi.cli.config import RunConfig
from repi.cli.report import fmt_float, render_csv, sanitize
from tests.utils import gaussian_h, triangular_csv


def _run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestEntropy:
    """Test the entropy subcommand."""

    def test_gaussian_json(self, capsys):
        code, payload = _run_json(
            capsys, ["entropy", "--family", "gaussian:1", "--orders", "0.5,1,2", "--grid-len", "2048"]
        )
        assert code == EXIT_OK
        rows = payload["reports"]
        assert [row["r"] for row in rows] == [0.5, 1.0, 2.0]
        for row in rows:
            assert row["density"] == "gaussian:1"
            assert row["h"] == pytest.approx(gaussian_h(1.0, row["r"]), abs=1e-6)
            assert row["N"] == pytest.approx(math.exp(2 * row["h"]), rel=1e-9)

    def test_triangular_csv(self, capsys, tmp_path):
        path = tmp_path / "triangle.csv"
        triangular_csv(path)
        code = main(["entropy", "--csv", str(path), "--orders", "2", "--format", "csv"])
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert list(rows[0]) == ["density", "r", "h", "N"]
        assert float(rows[0]["h"]) == pytest.approx(math.log(1.5), abs=1e-5)

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = main(["entropy", "--family", "uniform:0,1", "--orders", "2", "-o", str(out)])
        assert code == EXIT_OK
        assert capsys.readouterr().out == ""
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["reports"][0]["h"] == pytest.approx(0.0, abs=1e-9)


class TestConfigHash:
    """Test the reproducibility stamp in the JSON meta block."""

    argv = ["entropy", "--family", "laplace:1", "--orders", "2", "--grid-len", "1024"]

    def test_deterministic(self, capsys):
        _, first = _run_json(capsys, self.argv)
        _, second = _run_json(capsys, self.argv)
        assert first["meta"]["config_hash"] == second["meta"]["config_hash"]
        assert len(first["meta"]["config_hash"]) == 16
        assert "version" in first["meta"]

    def test_changes_with_inputs(self, capsys):
        _, first = _run_json(capsys, self.argv)
        _, second = _run_json(capsys, [*self.argv[:-1], "2048"])
        assert first["meta"]["config_hash"] != second["meta"]["config_hash"]

    def test_ignores_output_destination(self, tmp_path):
        base = RunConfig(command="entropy", density_specs=["laplace:1"], order_grid=[2.0], grid_len=1024)
        moved = base.model_copy(update={"output": tmp_path / "x.json", "format": "csv"})
        assert base.config_hash() == moved.config_hash()

    def test_changes_with_environment(self, capsys, monkeypatch):
        _, first = _run_json(capsys, self.argv)
        monkeypatch.setenv("REPI__REPI__TOL_ABS", "5e-5")
        _, second = _run_json(capsys, self.argv)
        assert first["meta"]["config_hash"] != second["meta"]["config_hash"]

    def test_changes_with_csv_contents(self, capsys, tmp_path):
        path = tmp_path / "density.csv"
        triangular_csv(path)
        argv = ["entropy", "--csv", str(path), "--orders", "2"]
        _, first = _run_json(capsys, argv)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[1001] == "1.0,1.0"
        lines[1001] = "1.0,0.9"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        _, second = _run_json(capsys, argv)
        assert first["meta"]["config_hash"] != second["meta"]["config_hash"]


class TestConstants:
    """Test the constants subcommand."""

    def test_rows_and_notes(self, capsys):
        code, payload = _run_json(capsys, ["constants", "--orders", "0.5,1,2", "--m", "2,3"])
        assert code == EXIT_OK
        rows = payload["reports"]
        assert len(rows) == 6
        by_key = {(row["r"], row["m"]): row for row in rows}

        above = by_key[(2.0, 2)]
        assert above["c_ram_sason"] == pytest.approx(27.0 / 32.0)
        assert above["alpha_li"] == pytest.approx(1.3247, abs=1e-4)
        assert above["logconcave_c"] is None
        assert above["notes"]["logconcave"].startswith("not applicable")

        below = by_key[(0.5, 2)]
        assert below["c_ram_sason"] is None
        assert below["logconcave_c"] == pytest.approx(0.84375)
        assert below["notes"]["c_ram_sason"].startswith("not applicable")

        assert "all" in by_key[(1.0, 3)]["notes"]

    def test_csv_notes_are_json(self, capsys):
        code = main(["constants", "--orders", "2", "--format", "csv"])
        assert code == EXIT_OK
        (row,) = csv.DictReader(io.StringIO(capsys.readouterr().out))
        assert row["logconcave_c"] == ""
        assert "logconcave" in json.loads(row["notes"])


class TestCheck:
    """Test suite runs and exit codes."""

    def test_pass(self, capsys):
        code, payload = _run_json(capsys, ["check", "dct", "--family", "gaussian:1", "gaussian:1", "--order", "2"])
        assert code == EXIT_OK
        (report,) = payload["reports"]
        assert report["inequality_id"] == "dct"
        assert report["pass"] is True
        assert report["label"] == "gaussian:1+gaussian:1"
        assert report["constants"]["lambda"] == [0.5, 0.5]

    def test_one_run_per_order(self, capsys):
        code, payload = _run_json(
            capsys, ["check", "dct", "--family", "gaussian:1", "laplace:1", "--orders", "1.5,2"]
        )
        assert code == EXIT_OK
        reports = payload["reports"]
        assert [r["inequality_id"] for r in reports] == ["dct", "dct"]
        assert [r["constants"]["r"] for r in reports] == [1.5, 2.0]
        assert all(r["status"] == "success" and r["pass"] for r in reports)

    def test_concavity_sweeps_grid_once(self, capsys):
        code, payload = _run_json(
            capsys, ["check", "concavity", "--family", "gaussian:1", "--orders", "0.5,1,1.5,2"]
        )
        assert code == EXIT_OK
        (report,) = payload["reports"]
        assert report["constants"]["orders"] == [0.5, 1.0, 1.5, 2.0]
        assert len(report["extra"]["second_differences"]) == 2

    def test_failed_inequality(self, capsys):
        code, payload = _run_json(
            capsys, ["check", "repic", "--family", "gaussian:1", "gaussian:1", "--order", "2", "--c", "2"]
        )
        assert code == EXIT_FAILED
        assert payload["reports"][0]["pass"] is False

    def test_skipped_is_not_failure(self, capsys):
        code, payload = _run_json(
            capsys, ["check", "repic", "--family", "gaussian:1", "student_t:1", "--order", "0.5"]
        )
        assert code == EXIT_OK
        assert payload["reports"][0]["status"] == "error"
        assert payload["reports"][0]["detail"]["code"] == "not_applicable"

    def test_csv_report(self, capsys):
        code = main(["check", "repic", "--family", "uniform:0,1", "uniform:0,1", "--order", "2", "--format", "csv"])
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [row["inequality_id"] for row in rows] == ["repic", "linearized"]
        assert float(rows[0]["gap"]) == pytest.approx(0.5625, abs=1e-5)
        assert rows[0]["pass"] == "True"

    def test_rotation_without_densities(self, capsys):
        code, payload = _run_json(capsys, ["check", "rotation", "--samples", "1000", "--seed", "0"])
        assert code in (EXIT_OK, EXIT_FAILED)
        labels = [r["label"] for r in payload["reports"]]
        assert labels == ["exact", "sampled", "inverse"]
        assert payload["reports"][0]["pass"] is True

    @pytest.mark.parametrize(
        "argv",
        [
            ["check", "dct", "--family", "cauchy:1", "gaussian:1", "--order", "2"],
            ["check", "dct", "--family", "gaussian:1", "gaussian:1", "--order", "2", "--suborders", "2,2"],
            ["check", "dct", "--order", "2"],
            ["check", "dct", "--family", "gaussian:1", "gaussian:1", "--orders", "1.5,2", "--suborders", "2,2"],
            ["entropy", "--family", "gaussian:1", "--orders", "0,1"],
            ["check", "preservation", "--family", "gaussian:1", "gaussian:1", "--order", "2", "--transport", "spline"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert main(argv) == EXIT_USAGE
        assert "repi:" in capsys.readouterr().err

    def test_missing_file(self, capsys, tmp_path):
        assert main(["entropy", "--csv", str(tmp_path / "absent.csv"), "--orders", "2"]) == EXIT_USAGE

    def test_numeric_error(self, capsys, tmp_path):
        path = tmp_path / "negative.csv"
        lines = ["x,f"] + [f"{i / 100!r},{(1.0 if i != 50 else -1.0)!r}" for i in range(101)]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert main(["entropy", "--csv", str(path), "--orders", "2"]) == EXIT_NUMERIC
        assert "numeric error" in capsys.readouterr().err

    def test_argparse_errors(self):
        with pytest.raises(SystemExit) as exc:
            main(["entropy", "--family", "gaussian:1"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit):
            main(["check", "epi"])


class TestReport:
    """Test float formatting of emitted reports."""

    @pytest.mark.parametrize(
        "value,expected",
        [(1 / 3, 0.333333333333), (math.inf, "inf"), (-math.inf, "-inf"), (2.0, 2.0)],
    )
    def test_fmt_float(self, value, expected):
        assert fmt_float(value) == expected

    def test_sanitize_nested(self):
        assert sanitize({"a": [1.0 / 3.0, None, True], "b": (2, "x")}) == {
            "a": [0.333333333333, None, True],
            "b": [2, "x"],
        }

    def test_render_csv_union_header(self):
        text = render_csv([{"a": 1}, {"a": 2, "b": [1, 2]}])
        assert text.splitlines() == ["a,b", "1,", '2,"[1,2]"']
