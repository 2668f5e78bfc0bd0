"""Tests for scaling fits, the main term, the λ-drift experiment and spectral sums."""

import math

import numpy as np
import pytest

from common.exceptions import EigenvalueFormatError, InvalidArgumentError
from common.schemas import GridPoint, ScalingFit
from experiments import (
    ScalingQuantity,
    a1_sum,
    envelope_consistent,
    fit_power_law,
    lambda_drift_experiment,
    load_eigenvalues,
    main_approximation_constant,
    main_term,
    main_term_via_afe,
    optimal_n_scale,
    optimal_v,
    predicted_exponents,
    scaling_fit,
    smoothed_spectral_sum,
    spectral_sum,
    sv_main_split,
    weil_trivial_envelope,
)
from testfun import phi1_antiderivative, phi_hat_closed, phi_hat_main


def _synthetic_grid(e_x: float, e_t: float) -> list[GridPoint]:
    return [
        GridPoint(X=X, T=T, N=10.0, value=3.0 * X**e_x * T**e_t)
        for X in (10.0, 100.0, 1000.0)
        for T in (2.0, 4.0, 8.0)
    ]


class TestPowerLawFit:
    """Test cases for the log-log least-squares fit."""

    def test_recovers_exponents(self):
        """Test that an exact power law is recovered."""
        (e_x, e_t), intercept, residual = fit_power_law(_synthetic_grid(0.5, 1.5))
        assert e_x == pytest.approx(0.5, abs=1e-10)
        assert e_t == pytest.approx(1.5, abs=1e-10)
        assert intercept == pytest.approx(math.log(3.0), abs=1e-10)
        assert residual == pytest.approx(0.0, abs=1e-10)

    def test_too_few_points(self):
        """Test that fewer than six points are rejected."""
        with pytest.raises(InvalidArgumentError):
            fit_power_law(_synthetic_grid(0.5, 1.5)[:5])
        with pytest.raises(InvalidArgumentError):
            scaling_fit(ScalingQuantity.A1, [(10.0, 2.0, 10.0)] * 5)

    def test_single_x(self):
        """Test that a grid with one X value is rejected."""
        points = [GridPoint(X=10.0, T=T, N=10.0, value=T) for T in (2, 3, 4, 5, 6, 7)]
        with pytest.raises(InvalidArgumentError):
            fit_power_law(points)

    def test_collinear(self):
        """Test that T = X² on every point is rejected."""
        points = [GridPoint(X=X, T=X**2, N=10.0, value=X) for X in (2, 3, 4, 5, 6, 7)]
        with pytest.raises(InvalidArgumentError):
            fit_power_law(points)

    def test_zero_value(self):
        """Test that a vanishing value is rejected."""
        points = _synthetic_grid(0.5, 1.5)
        points[0] = GridPoint(X=10.0, T=2.0, N=10.0, value=0.0)
        with pytest.raises(InvalidArgumentError):
            fit_power_law(points)


class TestEnvelopes:
    """Test cases for predicted exponents and the consistency rule."""

    def test_predicted_exponents(self):
        """Test the three envelope branches at θ = 1/6."""
        predicted = predicted_exponents(1.0 / 6.0)
        assert predicted["x_dominant"] == pytest.approx((0.25 + 1.0 / 12.0, 1.5))
        assert predicted["t_dominant"] == pytest.approx((1.0 / 12.0, 2.0))
        assert predicted["weil_trivial"] == (0.25, 1.5)

    def test_envelope_consistent(self):
        """Test the e_X threshold a1_exponent_offset + θ/2 + slack."""
        points = _synthetic_grid(0.3, 1.5)
        fit = ScalingFit(
            quantity="a1",
            grid=points,
            fitted_exponents=(0.3, 1.5),
            intercept=0.0,
            residual=0.0,
        )
        assert envelope_consistent(fit, 1.0 / 6.0)
        steep = fit.model_copy(update={"fitted_exponents": (0.6, 1.5)})
        assert not envelope_consistent(steep, 1.0 / 6.0)
        assert fit.label == "consistency, not verification"

    def test_closed_form_scales(self):
        """Test the balancing N, the optimal V and the Weil envelope."""
        expected_n = 2.0**3.5 * 10.0 + 100.0**0.75 * 2.0**1.5
        assert optimal_n_scale(100.0, 2.0, 0.0) == pytest.approx(expected_n)
        assert optimal_v(100.0, 5.0, 0.25) == pytest.approx(100.0**0.25 * 3.0)
        assert weil_trivial_envelope(10.0, 10.0, 4.0) == pytest.approx(
            math.sqrt(10.0) * 10.0**0.25 * 8.0 * math.log(100.0)
        )


class TestMainTerm:
    """Test cases for the smoothed sum and the main term."""

    def test_a1_scaling(self, params, bump):
        """Test A₁ = (π²/12)·(smoothed sum)."""
        plain = a1_sum(params, bump, 60)
        scaled = a1_sum(params, bump, 60, a1=True)
        scale = math.pi**2 / 12.0
        assert scaled.complex == pytest.approx(scale * plain.complex, rel=1e-14)
        assert scaled.tail_bound == pytest.approx(scale * plain.tail_bound, rel=1e-14)

    def test_tail_correction(self, params):
        """Test that the uncorrected sum differs by exactly the mean-value correction."""
        corrected = main_term(params, 60)
        plain = main_term(params, 60, tail_correction=False)
        correction = -complex(phi1_antiderivative(60.5, params))
        assert corrected.complex - plain.complex == pytest.approx(correction, rel=1e-12)
        assert corrected.terms_used == 58

    def test_split_validation(self, params):
        """Test that V < 1 and N_max < 3 are rejected."""
        with pytest.raises(InvalidArgumentError):
            sv_main_split(params, 0.5, 10)
        with pytest.raises(InvalidArgumentError):
            sv_main_split(params, 10.0, 2)

    @pytest.mark.slow
    def test_afe_route_agrees(self, params):
        """Test that the AFE route reproduces the direct main term."""
        direct = main_term(params, 20)
        rebuilt = main_term_via_afe(params, 20, V=10.0)
        assert rebuilt.complex == pytest.approx(direct.complex, abs=1e-4)
        assert rebuilt.terms_used == 18


class TestLambdaDrift:
    """Test cases for the aggregate λ-drift experiment."""

    def test_experiment(self):
        """Test the recorded points and envelope ratios."""
        drift = lambda_drift_experiment([40, 10, 20], z=200.0)
        assert drift.Q_values == [10, 20, 40]
        assert len(drift.aggregates) == 3
        for Q, aggregate, ratio in zip(drift.Q_values, drift.aggregates, drift.envelope_ratios):
            assert ratio == pytest.approx(abs(aggregate) / (Q**1.5 * math.log(Q) ** 2))
        assert math.isfinite(drift.fitted_slope)

    def test_validation(self):
        """Test that fewer than two moduli or Q < 2 are rejected."""
        with pytest.raises(InvalidArgumentError):
            lambda_drift_experiment([10, 10])
        with pytest.raises(InvalidArgumentError):
            lambda_drift_experiment([1, 10])


class TestEigenvalueFiles:
    """Test cases for eigenvalue ingestion."""

    def test_sample_file(self, sample_eigenvalues):
        """Test the shipped sample list."""
        ev = load_eigenvalues(sample_eigenvalues)
        assert len(ev) == 10
        assert ev.values[0] == pytest.approx(9.533695261)
        assert all(m == 1 for m in ev.multiplicities)

    def test_comments_and_multiplicities(self, eigenvalue_file):
        """Test comments, blank lines and the optional multiplicity column."""
        path = eigenvalue_file("# header\n\n9.5\n12.25 2  # doubled\n")
        ev = load_eigenvalues(path)
        assert ev.values == [9.5, 12.25]
        assert ev.multiplicities == [1, 2]
        assert ev.source == str(path)

    def test_empty(self, eigenvalue_file, params):
        """Test that an empty list gives zero sums."""
        ev = load_eigenvalues(eigenvalue_file("# nothing here\n"))
        assert len(ev) == 0
        assert spectral_sum(ev, 10.0, 5.0) == 0j
        assert smoothed_spectral_sum(ev, params) == 0j

    @pytest.mark.parametrize(
        "content, line",
        [("abc\n", 1), ("1.0\n-2.0\n", 2), ("1.0 0\n", 1), ("1.0 2 3\n", 1), ("1.0 x\n", 1)],
    )
    def test_malformed(self, eigenvalue_file, content, line):
        """Test that malformed lines report their line number."""
        with pytest.raises(EigenvalueFormatError) as excinfo:
            load_eigenvalues(eigenvalue_file(content))
        assert excinfo.value.line_number == line

    def test_order(self, eigenvalue_file):
        """Test that out-of-order or repeated values need sorting, which merges repeats."""
        path = eigenvalue_file("3.0\n2.0\n3.0 2\n")
        with pytest.raises(EigenvalueFormatError) as excinfo:
            load_eigenvalues(path)
        assert excinfo.value.line_number == 2
        ev = load_eigenvalues(path, sort=True)
        assert ev.values == [2.0, 3.0]
        assert ev.multiplicities == [1, 3]

    def test_missing_file(self, tmp_path):
        """Test that a missing file is an argument error."""
        with pytest.raises(InvalidArgumentError):
            load_eigenvalues(tmp_path / "absent.txt")


class TestSpectralSums:
    """Test cases for spectral exponential sums."""

    def test_trivial_phase(self, eigenvalue_file):
        """Test X = 1 counts and X = e^{2π} makes t = 2 contribute 1."""
        ev = load_eigenvalues(eigenvalue_file("2.0\n5.0 3\n9.0\n"))
        assert spectral_sum(ev, 1.0, 6.0) == pytest.approx(4.0)
        assert spectral_sum(ev, 1.0, 6.0, weighted=True) == pytest.approx(2.0 + 15.0)
        single = load_eigenvalues(eigenvalue_file("2.0\n"))
        assert spectral_sum(single, math.exp(2.0 * math.pi), 3.0) == pytest.approx(1.0, abs=1e-12)

    def test_triangle_inequality(self, sample_eigenvalues):
        """Test |Σ X^{it_j}| ≤ #{t_j ≤ T}."""
        ev = load_eigenvalues(sample_eigenvalues)
        for X in (2.0, 10.0, 1e3):
            for T in (10.0, 15.0, 20.0):
                count = sum(1 for t in ev.values if t <= T)
                assert abs(spectral_sum(ev, X, T)) <= count + 1e-12

    def test_validation(self, sample_eigenvalues):
        """Test that X < 1 and T ≤ 0 are rejected."""
        ev = load_eigenvalues(sample_eigenvalues)
        with pytest.raises(InvalidArgumentError):
            spectral_sum(ev, 0.5, 10.0)
        with pytest.raises(InvalidArgumentError):
            spectral_sum(ev, 10.0, 0.0)

    def test_smoothed_single_entry(self, eigenvalue_file, params):
        """Test Σφ̂(t_j) on a one-entry list with multiplicity."""
        ev = load_eigenvalues(eigenvalue_file("3.5 2\n"))
        assert smoothed_spectral_sum(ev, params) == pytest.approx(2.0 * phi_hat_closed(3.5, params))

    def test_main_approximation_constant(self, params, eigenvalue_file):
        """Test that the fitted C bounds every gap and entries past 200 are skipped."""
        ev = load_eigenvalues(eigenvalue_file("0.3\n0.8\n1.5\n"))
        constant = main_approximation_constant(ev, params)
        assert constant > 0
        t = np.asarray(ev.values)
        gap = np.abs(np.asarray(phi_hat_closed(t, params)) - np.asarray(phi_hat_main(t, params)))
        assert np.all(gap <= constant * np.exp(-math.pi * t) * (1 + 1e-12))
        far = load_eigenvalues(eigenvalue_file("250.0\n"))
        assert main_approximation_constant(far, params) == 0.0
