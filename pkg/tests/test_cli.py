"""Tests for the command-line interface."""

import io
import json

import pandas as pd
import pytest

from cli import build_parser, main
from cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Run every CLI test away from any local .env file."""
    monkeypatch.chdir(tmp_path)


def _table(path) -> pd.DataFrame:
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# config: ")
    return pd.read_csv(io.StringIO("\n".join(lines[1:])))


class TestParser:
    """Test cases for argument parsing."""

    def test_subcommands(self):
        """Test that the three subcommands parse their arguments."""
        parser = build_parser()
        args = parser.parse_args(["verify", "cosine", "--qmax", "20"])
        assert (args.command, args.suite, args.qmax) == ("verify", "cosine", 20)
        args = parser.parse_args(["compute", "script-l", "--m", "12", "--s", "0.5+3j"])
        assert (args.target, args.m, args.s) == ("script-l", 12, "0.5+3j")
        args = parser.parse_args(["experiment", "scaling-a1", "--xs", "10", "100"])
        assert args.xs == [10.0, 100.0]

    def test_unknown_suite(self, capsys):
        """Test that an unknown suite is a usage error."""
        assert main(["verify", "nonexistent"]) == EXIT_USAGE

    def test_missing_subcommand(self, capsys):
        """Test that a bare invocation is a usage error."""
        assert main([]) == EXIT_USAGE


class TestConfiguration:
    """Test cases for configuration errors."""

    def test_missing_config_file(self, tmp_path, capsys):
        """Test that a missing config file exits with 2."""
        code = main(["verify", "cosine", "--config", str(tmp_path / "absent.toml")])
        assert code == EXIT_USAGE
        assert "configuration error" in capsys.readouterr().err

    def test_invalid_value(self, capsys):
        """Test that an out-of-range parameter exits with 2."""
        assert main(["compute", "a1", "--X", "1"]) == EXIT_USAGE

    def test_config_file_is_applied(self, tmp_path, out_dir, capsys):
        """Test that values from the TOML file reach the run."""
        config = tmp_path / "run.toml"
        config.write_text('Q = 4\nOUTPUT_FORMAT = "json"\n')
        code = main(["compute", "kloosterman-row", "--config", str(config), "--out", str(out_dir)])
        assert code == EXIT_OK
        document = json.loads((out_dir / "compute_kloosterman_row.json").read_text())
        assert document["config"]["Q"] == 4
        assert [row["q"] for row in document["rows"]] == [1, 2, 3, 4]


class TestVerify:
    """Test cases for ``verify``."""

    def test_cosine_suite(self, out_dir, capsys):
        """Test a small cosine suite end to end, with JSON reports and a CSV summary."""
        code = main(["verify", "cosine", "--qmax", "20", "--out", str(out_dir)])
        assert code == EXIT_OK
        assert "cosine: 620 checks, 0 failed" in capsys.readouterr().out
        table = _table(out_dir / "verify_cosine.csv")
        assert len(table) == 20 * 31
        assert table["pass"].all()
        document = json.loads((out_dir / "verify_cosine.json").read_text())
        assert len(document["result"]) == 20 * 31
        first = document["result"][0]
        assert first["name"] == "cosine"
        assert {"lhs", "rhs", "abs_err", "rel_err", "pass"} <= set(first)

    def test_inequality_suite_as_json(self, out_dir, capsys):
        """Test JSON reports carry the config and one entry per check."""
        code = main(["verify", "inequality", "--format", "json", "--out", str(out_dir)])
        assert code == EXIT_OK
        document = json.loads((out_dir / "verify_inequality.json").read_text())
        assert document["config"]["fixtures_version"]
        names = [report["name"] for report in document["result"]]
        assert names == ["arg_inequality"] + ["arctan_addition"] * 4
        assert all(report["pass"] for report in document["result"])
        assert (out_dir / "verify_inequality.csv").is_file()


class TestCompute:
    """Test cases for ``compute``."""

    def test_kloosterman_row(self, out_dir, capsys):
        """Test the (q, S(1,1;q)) row for Q = 3."""
        code = main(["compute", "kloosterman-row", "--n", "1", "--Q", "3", "--out", str(out_dir)])
        assert code == EXIT_OK
        printed = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert list(printed["q"]) == [1, 2, 3]
        assert list(printed["S"]) == pytest.approx([1.0, 1.0, -1.0])
        assert list(_table(out_dir / "compute_kloosterman_row.csv")["q"]) == [1, 2, 3]

    def test_rho_lambda(self, out_dir, capsys):
        """Test the ρ/λ table columns."""
        code = main(["compute", "rho-lambda", "--m", "5", "--Q", "12", "--out", str(out_dir)])
        assert code == EXIT_OK
        table = _table(out_dir / "compute_rho_lambda.csv")
        assert list(table.columns) == ["q", "rho", "lambda"]
        assert table["rho"].iloc[0] == 1

    def test_script_l(self, out_dir, capsys):
        """Test 𝓛_0(2.5) = ζ(4) through the CLI."""
        code = main(["compute", "script-l", "--m", "0", "--s", "2.5", "--out", str(out_dir)])
        assert code == EXIT_OK
        row = _table(out_dir / "compute_script_l.csv").iloc[0]
        assert row["re"] == pytest.approx(1.0823232337111382, rel=1e-12)
        assert row["im"] == pytest.approx(0.0, abs=1e-15)

    def test_pole_is_a_usage_error(self, out_dir, capsys):
        """Test that asking for 𝓛_0(1) fails cleanly."""
        code = main(["compute", "script-l", "--m", "0", "--s", "1", "--out", str(out_dir)])
        assert code == EXIT_FAILED

    def test_spectral(self, sample_eigenvalues, out_dir, capsys):
        """Test the spectral sums over the sample file."""
        code = main(
            [
                "compute",
                "spectral",
                "--eigenvalues",
                str(sample_eigenvalues),
                "--X",
                "10",
                "--T",
                "15",
                "--out",
                str(out_dir),
            ]
        )
        assert code == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["count"] == 4
        assert abs(complex(result["Re"], result["Im"])) <= 4.0
        assert (out_dir / "compute_spectral.json").is_file()

    def test_spectral_needs_file(self, out_dir, capsys):
        """Test that the spectral target without a file is a usage error."""
        assert main(["compute", "spectral", "--out", str(out_dir)]) == EXIT_USAGE

    def test_bad_eigenvalue_file(self, eigenvalue_file, out_dir, capsys):
        """Test that a malformed eigenvalue file is a usage error."""
        path = eigenvalue_file("abc\n")
        code = main(["compute", "spectral", "--eigenvalues", str(path), "--out", str(out_dir)])
        assert code == EXIT_USAGE
        assert "line 1" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "target", [["kloosterman-row", "--n", "1", "--Q", "50"], ["a1", "--Q", "40"]]
    )
    def test_deterministic_output_is_byte_identical(self, tmp_path, target, capsys):
        """Test that deterministic runs write identical bytes for any worker count or directory."""
        outputs = []
        for threads, folder in (("1", "one"), ("4", "four")):
            argv = ["compute", *target, "--deterministic", "--threads", threads]
            assert main(argv + ["--out", str(tmp_path / folder)]) == EXIT_OK
            name = f"compute_{target[0].replace('-', '_')}.csv"
            outputs.append((tmp_path / folder / name).read_bytes())
        assert outputs[0] == outputs[1]
        assert b"runtime_ms" not in outputs[0]
        assert b"THREADS" not in outputs[0]
        assert b"OUT_DIR" not in outputs[0]


class TestExperiment:
    """Test cases for ``experiment``."""

    def test_grid_too_small(self, out_dir, capsys):
        """Test that a one-point grid is rejected before any work."""
        code = main(["experiment", "scaling-a1", "--xs", "10", "--ts", "2", "--out", str(out_dir)])
        assert code == EXIT_USAGE

    def test_lambda_drift(self, out_dir, capsys):
        """Test that the λ-drift experiment writes its points and fit."""
        argv = ["experiment", "lambda-drift", "--qmax", "40", "--z", "200"]
        code = main(argv + ["--out", str(out_dir)])
        assert code in (EXIT_OK, EXIT_FAILED)
        points = _table(out_dir / "experiment_lambda_drift_points.csv")
        assert list(points["Q"]) == [5, 10, 20, 40]
        document = json.loads((out_dir / "experiment_lambda_drift.json").read_text())
        assert document["result"]["label"] == "consistency, not verification"
        assert "lambda drift: slope=" in capsys.readouterr().out
