"""Tests for configuration, report schemas and the shared numeric utilities."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from common.config import OutputFormat, TauConvention, load_settings
from common.exceptions import ConfigurationError, EigenvalueFormatError, InvalidArgumentError
from common.schemas import ComplexValue, EigenvalueList, IdentityReport, TruncatedValue
from common.utils import (
    chunk_ranges,
    compensated_sum,
    graded_edges,
    integrate_edges,
    integrate_panels,
    oscillatory_integral,
    parallel_map,
)


class TestSettings:
    """Test cases for layered run configuration."""

    @pytest.fixture(autouse=True)
    def clean_env(self, monkeypatch, tmp_path):
        for name in ("KLOOSTER_X", "KLOOSTER_T", "KLOOSTER_THREADS"):
            monkeypatch.delenv(name, raising=False)
        monkeypatch.chdir(tmp_path)

    def test_defaults(self):
        """Test the documented defaults."""
        settings = load_settings()
        assert settings.X == 10.0
        assert settings.T == 4.0
        assert settings.THETA == pytest.approx(1.0 / 6.0)
        assert settings.QMAX == 300
        assert settings.OUTPUT_FORMAT is OutputFormat.CSV
        assert settings.TAU_CONVENTION is TauConvention.SYMMETRIC

    def test_precedence(self, monkeypatch, tmp_path):
        """Test override > file > environment > default."""
        monkeypatch.setenv("KLOOSTER_X", "50")
        monkeypatch.setenv("KLOOSTER_T", "7")
        monkeypatch.setenv("KLOOSTER_THREADS", "3")
        config = tmp_path / "run.toml"
        config.write_text("X = 20.0\nT = 9.0\n")
        settings = load_settings(config, X=30.0, T=None)
        assert settings.X == 30.0
        assert settings.T == 9.0
        assert settings.THREADS == 3

    def test_missing_file(self, tmp_path):
        """Test that a missing config file is a configuration error."""
        with pytest.raises(ConfigurationError):
            load_settings(tmp_path / "absent.toml")

    def test_unparsable_file(self, tmp_path):
        """Test that a malformed TOML file is a configuration error."""
        config = tmp_path / "broken.toml"
        config.write_text("X = = 3\n")
        with pytest.raises(ConfigurationError):
            load_settings(config)

    @pytest.mark.parametrize(
        "overrides",
        [{"X": 1.0}, {"THETA": 0.5}, {"THREADS": 0}, {"LOG_LEVEL": "loud"}, {"V": 0.5}],
    )
    def test_invalid_values(self, overrides):
        """Test that out-of-range values are rejected."""
        with pytest.raises(ConfigurationError):
            load_settings(**overrides)

    def test_resolved_defaults(self):
        """Test V = X^θ(1 + √X/T) and N_max = ⌈40√X⌉ unless given."""
        settings = load_settings(X=100.0, T=5.0, THETA=0.25)
        assert settings.resolved_v() == pytest.approx(100.0**0.25 * 3.0)
        assert settings.resolved_nmax() == 400
        explicit = load_settings(V=7.0, NMAX=12)
        assert explicit.resolved_v() == 7.0
        assert explicit.resolved_nmax() == 12


class TestTolerances:
    """Test cases for the versioned fixture tolerances."""

    def test_entries(self, tolerances):
        """Test that the fixture file carries a version, checks and constants."""
        assert tolerances.version
        assert tolerances.check("cosine").abs == pytest.approx(1e-6)
        assert tolerances.check("kuznetsov").rel == pytest.approx(1e-3)
        assert tolerances.constant("bump_i0") == pytest.approx(0.4439938161680794)

    def test_unknown_names(self, tolerances):
        """Test that unknown checks and constants raise."""
        with pytest.raises(ConfigurationError):
            tolerances.check("nonexistent")
        with pytest.raises(ConfigurationError):
            tolerances.constant("nonexistent")


class TestSchemas:
    """Test cases for result records."""

    def test_report_pass_rule(self):
        """Test abs_err ≤ tol_abs + tol_rel·|lhs| + tails."""
        assert IdentityReport.build("x", 1.0, 1.0 + 1e-7, tol_abs=1e-6).passed
        assert not IdentityReport.build("x", 1.0, 1.1, tol_abs=1e-6).passed
        assert IdentityReport.build("x", 1.0, 1.1, tol_abs=1e-6, rhs_tail=0.2).passed
        assert IdentityReport.build("x", 10.0, 10.5, tol_rel=0.1).passed

    def test_unconverged_report_fails(self):
        """Test that an unsettled truncation fails the report even with zero error."""
        assert not IdentityReport.build("x", 1.0, 1.0, tol_abs=1.0, converged=False).passed

    def test_report_errors(self):
        """Test the absolute and relative error fields."""
        report = IdentityReport.build("x", 2.0 + 0j, 1.0 + 1j)
        assert report.abs_err == pytest.approx(math.sqrt(2.0))
        assert report.rel_err == pytest.approx(math.sqrt(2.0) / 2.0)

    def test_report_serializes_pass(self):
        """Test that the pass flag is emitted under its wire name."""
        dumped = IdentityReport.build("x", 0.0, 0.0).model_dump(by_alias=True)
        assert dumped["pass"] is True
        assert IdentityReport.build("x", 0.0, 0.0).summary_row()["pass"] is True

    def test_non_finite_values_rejected(self):
        """Test that NaN and infinite components are rejected."""
        with pytest.raises(ValidationError):
            ComplexValue.of(complex(math.nan, 0.0))
        with pytest.raises(ValidationError):
            TruncatedValue.of(1.0, math.inf, 1)

    def test_truncated_value(self):
        """Test that terms_used is at least 1."""
        value = TruncatedValue.of(1 + 2j, 0.0, 0)
        assert value.terms_used == 1
        assert value.complex == 1 + 2j

    def test_eigenvalue_list(self):
        """Test default multiplicities and ordering validation."""
        ev = EigenvalueList(values=[1.0, 2.0])
        assert ev.multiplicities == [1, 1]
        assert len(ev) == 2
        with pytest.raises(ValidationError):
            EigenvalueList(values=[2.0, 1.0])
        with pytest.raises(ValidationError):
            EigenvalueList(values=[1.0, 1.0])
        with pytest.raises(ValidationError):
            EigenvalueList(values=[-1.0])
        with pytest.raises(ValidationError):
            EigenvalueList(values=[1.0], multiplicities=[0])

    def test_error_hierarchy(self):
        """Test that format errors carry the line and are argument errors."""
        error = EigenvalueFormatError("bad value", line_number=4)
        assert isinstance(error, InvalidArgumentError)
        assert error.line_number == 4
        assert str(error).startswith("line 4")


class TestParallel:
    """Test cases for the worker pool and reductions."""

    def test_compensated_sum(self):
        """Test exact cancellation and complex input."""
        assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
        assert compensated_sum(np.array([1e16 + 1j, 1.0 - 1j, -1e16])) == 1.0 + 0j
        assert compensated_sum([]) == 0.0

    @pytest.mark.parametrize("threads", [1, 3])
    def test_parallel_map_keeps_order(self, threads):
        """Test that results come back in input order."""
        items = list(range(50))
        assert parallel_map(lambda x: x * x, items, threads=threads) == [x * x for x in items]

    def test_chunk_ranges(self):
        """Test that chunks cover the range contiguously."""
        chunks = chunk_ranges(3, 103, 7)
        assert chunks[0][0] == 3
        assert chunks[-1][1] == 103
        assert all(a[1] == b[0] for a, b in zip(chunks, chunks[1:]))
        assert chunk_ranges(5, 5, 4) == []
        assert len(chunk_ranges(0, 2, 10)) == 2


class TestQuadrature:
    """Test cases for panel quadrature."""

    def test_polynomial_exact(self):
        """Test that Gauss–Legendre panels integrate x² exactly."""
        edges = np.linspace(0.0, 1.0, 5)
        assert integrate_edges(lambda x: x**2, edges, order=4) == pytest.approx(1.0 / 3.0)

    def test_graded_edges(self):
        """Test that graded edges start and stop at the limits and increase."""
        edges = graded_edges(0.0, 2.0, levels=10)
        assert edges[0] == 0.0
        assert edges[-1] == 2.0
        assert np.all(np.diff(edges) > 0)

    def test_panels_with_early_exit(self):
        """Test ∫_0^∞ e^{−x} dx = 1."""
        result = integrate_panels(lambda x: np.exp(-x), 0.0, 1.0, rel_tol=1e-14)
        assert result.converged
        assert result.value == pytest.approx(1.0, abs=1e-12)

    def test_panels_with_stop(self):
        """Test that a finite upper limit clips the last panel."""
        result = integrate_panels(lambda x: np.ones_like(x), 0.0, 0.3, stop=1.0, rel_tol=0.0)
        assert result.value == pytest.approx(1.0)
        assert result.end == pytest.approx(1.0)

    def test_oscillatory(self):
        """Test ∫_0^∞ e^{−x}cos x dx = ½ and ∫_0^∞ x^{−1/2}e^{−x} dx = √π."""
        damped = oscillatory_integral(lambda x: np.exp(-x) * np.cos(x), 1.0)
        assert damped.value == pytest.approx(0.5, abs=1e-10)
        singular = oscillatory_integral(lambda x: np.exp(-x) / np.sqrt(x), 1.0)
        assert singular.value == pytest.approx(math.sqrt(math.pi), abs=1e-5)
