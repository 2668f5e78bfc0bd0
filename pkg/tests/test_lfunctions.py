"""Tests for ζ, L(s, χ_D), the symbols ρ_q/λ_q and 𝓛_m(s)."""

import math

import mpmath
import numpy as np
import pytest

from common.config import TauConvention
from common.exceptions import InvalidArgumentError, PoleError
from lfunctions import (
    dirichlet_l,
    dirichlet_l_hurwitz,
    dirichlet_l_many,
    generalized,
    hurwitz_zeta,
    hurwitz_zeta_pole_scaled,
    lambda_drift_aggregate,
    lambda_many,
    lambda_mean,
    lambda_partial_sum,
    lambda_q,
    lambda_table,
    lfunction_suite,
    rho_direct,
    rho_fast,
    rho_many,
    rho_table,
    s_v,
    script_l,
    script_l_many,
    script_l_via_afe,
    select_tau_convention,
    series_reports,
    subconvexity_ratio,
    tau_power_sum,
    zeta,
)

ZETA_POINTS = (2.0, 3.0 + 1.0j, 0.5 + 10.0j, 0.5 + 30.0j, 1.5 - 4.0j, 0.25)


class TestZeta:
    """Test cases for Euler–Maclaurin ζ and Hurwitz ζ."""

    def test_basel(self):
        """Test ζ(2) = π²/6."""
        assert zeta(2.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-13)

    @pytest.mark.parametrize("s", ZETA_POINTS)
    def test_zeta_matches_mpmath(self, s):
        """Test ζ(s) against mpmath."""
        assert zeta(s) == pytest.approx(complex(mpmath.zeta(s)), rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize("a", (0.1, 0.5, 1.0, 2.75))
    def test_hurwitz_matches_mpmath(self, a):
        """Test ζ(s, a) against mpmath."""
        for s in (2.0, 0.5 + 5.0j, 3.5 - 2.0j):
            expected = complex(mpmath.zeta(s, a))
            assert hurwitz_zeta(s, a) == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_vectorized(self):
        """Test that array input gives the elementwise values."""
        s = np.array(ZETA_POINTS, dtype=np.complex128)
        values = zeta(s)
        for point, value in zip(ZETA_POINTS, values):
            assert value == pytest.approx(zeta(point), rel=1e-14)

    def test_pole(self):
        """Test that s = 1 raises while the pole-scaled form is 1."""
        with pytest.raises(PoleError):
            zeta(1.0)
        with pytest.raises(PoleError):
            hurwitz_zeta(1.0, 0.5)
        assert hurwitz_zeta_pole_scaled(1.0) == pytest.approx(1.0)


class TestDirichletL:
    """Test cases for L(s, χ_D)."""

    @pytest.mark.parametrize("D", (-4, -3, 5, 8, 12, -7, 13))
    def test_matches_hurwitz_decomposition(self, D):
        """Test the midpoint expansion against |D|^{-s}Σχ(a)ζ(s, a/|D|)."""
        for s in (2.0, 0.5 + 3.0j, 1.5 + 20.0j, 0.5):
            assert dirichlet_l(s, D) == pytest.approx(
                dirichlet_l_hurwitz(s, D), rel=1e-10, abs=1e-12
            )

    def test_values_at_one(self):
        """Test the classical values L(1, χ_{−4}), L(1, χ_{−3}), L(1, χ_5)."""
        assert dirichlet_l(1.0, -4) == pytest.approx(math.pi / 4.0, rel=1e-12)
        assert dirichlet_l(1.0, -3) == pytest.approx(math.pi / (3.0 * math.sqrt(3.0)), rel=1e-12)
        golden = (1.0 + math.sqrt(5.0)) / 2.0
        expected = 2.0 * math.log(golden) / math.sqrt(5.0)
        assert dirichlet_l(1.0, 5) == pytest.approx(expected, rel=1e-12)

    def test_hurwitz_form_at_one(self):
        """Test that the Hurwitz decomposition is regular at s = 1 for D ≠ 1."""
        assert dirichlet_l_hurwitz(1.0, -4) == pytest.approx(math.pi / 4.0, rel=1e-12)
        for D in (-3, 5, 8, -7, 13):
            assert dirichlet_l_hurwitz(1.0, D) == pytest.approx(dirichlet_l(1.0, D), rel=1e-10)
        with pytest.raises(PoleError):
            dirichlet_l_hurwitz(1.0, 1)

    def test_many_matches_single(self):
        """Test batch evaluation against pointwise evaluation."""
        s = np.array([0.5 + 1.0j, 0.5 + 7.0j, 2.0, 1.0])
        values = dirichlet_l_many(s, -8)
        for point, value in zip(s, values):
            assert value == pytest.approx(dirichlet_l(complex(point), -8), rel=1e-12)


class TestSymbols:
    """Test cases for ρ_q and λ_q."""

    def test_rho_fast_matches_enumeration(self):
        """Test the local-count product against enumeration."""
        for q in range(1, 201):
            for n in range(-20, 41):
                assert rho_fast(q, n) == rho_direct(q, n)

    def test_rho_many_and_table(self):
        """Test batch and table forms against enumeration."""
        n_values = np.arange(-12, 30)
        for q in (1, 2, 8, 9, 12, 45, 64, 105):
            assert list(rho_many(q, n_values)) == [rho_direct(q, int(n)) for n in n_values]
        for m in (-4, 0, 5, 12, 21, 32, 45):
            table = rho_table(m, 300)
            assert table[0] == 0
            assert [int(v) for v in table[1:]] == [rho_direct(q, m) for q in range(1, 301)]

    def test_rho_one(self):
        """Test ρ_1(n² − 4) = 1 for every n."""
        for n in range(0, 50):
            assert rho_direct(1, n * n - 4) == 1

    def test_lambda_table_and_many(self):
        """Test the convolution table and the batch form against the definition."""
        for m in (-4, 5, 12, 21, 32, 60):
            table = lambda_table(m, 200)
            assert [int(v) for v in table[1:]] == [lambda_q(q, m) for q in range(1, 201)]
        n_values = np.arange(-8, 20)
        for q in (1, 4, 12, 18, 36):
            assert list(lambda_many(q, n_values)) == [lambda_q(q, int(n)) for n in n_values]

    def test_lambda_partial_sum(self):
        """Test the periodic evaluation against a direct n-sum."""
        z = 50.0
        for q in range(1, 21):
            total, _ = lambda_partial_sum(q, z)
            assert total == sum(lambda_q(q, n * n - 4) for n in range(3, 51))

    def test_lambda_drift_envelope(self, tolerances):
        """Test |aggregate drift| ≤ C·Q^{3/2}log²Q at Q = 50, z = 10³."""
        Q = 50
        aggregate = lambda_drift_aggregate(Q, 1e3)
        bound = tolerances.constant("lambda_drift_c") * Q**1.5 * math.log(Q) ** 2
        assert abs(aggregate) <= bound

    def test_validation(self):
        """Test that q < 1 and z < 2 are rejected."""
        with pytest.raises(InvalidArgumentError):
            rho_direct(0, 5)
        with pytest.raises(InvalidArgumentError):
            lambda_partial_sum(3, 1.0)


class TestScriptL:
    """Test cases for the generalized L-function 𝓛_m(s)."""

    def test_vanishes_off_discriminants(self):
        """Test 𝓛_m = 0 for m ≡ 2, 3 mod 4."""
        assert not np.any(script_l_many(np.array([2.0, 0.5 + 1.0j]), 7))
        assert script_l(2.0, 6).complex == 0

    def test_zero_discriminant(self):
        """Test 𝓛_0(s) = ζ(2s − 1)."""
        assert script_l(2.5, 0).complex == pytest.approx(zeta(4.0), rel=1e-13)

    def test_fundamental_is_dirichlet_l(self):
        """Test 𝓛_D(s) = L(s, χ_D) for fundamental D."""
        for D in (-4, 5, 12, -3):
            assert script_l(1.5 + 2.0j, D).complex == pytest.approx(dirichlet_l(1.5 + 2.0j, D))

    def test_poles(self):
        """Test that s = 1 is a pole for m = 0 and nonzero squares."""
        for m in (0, 1, 9):
            with pytest.raises(PoleError):
                script_l(1.0, m)

    def test_tau_power_sum(self):
        """Test τ_w(1) = 1 and τ_w(p) = p^w + p^{−w} (symmetric) or 1 + p^w (divisor)."""
        assert tau_power_sum(1, 0.3, TauConvention.SYMMETRIC) == pytest.approx(1.0)
        p, w = 7, 0.25 + 1.0j
        assert tau_power_sum(p, w, TauConvention.SYMMETRIC) == pytest.approx(p**w + p ** (-w))
        assert tau_power_sum(p, w, TauConvention.DIVISOR) == pytest.approx(1.0 + p**w)

    def test_decomposition_matches_series(self):
        """Test the decomposition against the Dirichlet series at s = 2.5."""
        reports = series_reports()
        assert len(reports) == 6
        assert all(report.passed for report in reports)

    def test_disagreeing_series_forms_fail(self, monkeypatch):
        """Test that a series oracle whose two forms disagree fails the report."""
        forms = generalized.script_l_series_forms

        def truncated_lambda_form(s, m, Q):
            rho_form, _ = forms(s, m, Q)
            _, lam_form = forms(s, m, 3)
            return rho_form, lam_form.model_copy(update={"tail_bound": 0.0})

        monkeypatch.setattr(generalized, "script_l_series_forms", truncated_lambda_form)
        (report,) = series_reports(m_values=(5,))
        assert report.details["forms_agree"] is False
        assert not report.passed

    def test_lambda_mean(self):
        """Test ζ(2s)/ζ(1+s) at s = 2."""
        assert lambda_mean(2.0) == pytest.approx(zeta(4.0) / zeta(3.0))

    def test_subconvexity_ratio_is_positive(self):
        """Test the normalized size on the critical line."""
        ratios = subconvexity_ratio(21, np.array([0.0, 5.0, 20.0]))
        assert np.all(ratios > 0)

    @pytest.mark.slow
    def test_symmetric_convention_selected(self):
        """Test that the oracle selects the symmetric τ normalization."""
        assert select_tau_convention() is TauConvention.SYMMETRIC


class TestApproximateFunctionalEquation:
    """Test cases for S_V and the AFE."""

    def test_s_v_off_discriminants(self):
        """Test S_V(m) = 0 for m ≡ 2, 3 mod 4 and rejection of V < 1."""
        assert s_v(6, 10.0).complex == 0
        with pytest.raises(InvalidArgumentError):
            s_v(5, 0.5)

    @pytest.mark.parametrize("n", (3, 4, 5, 6))
    def test_afe_reconstructs_value(self, n):
        """Test 𝓛_{n²−4}(1) = S_V − integral at V = 10."""
        report = script_l_via_afe(n * n - 4, 10.0)
        assert report.passed, report.abs_err

    def test_afe_is_independent_of_v(self):
        """Test that the reconstruction does not depend on V."""
        low = script_l_via_afe(32, 10.0)
        high = script_l_via_afe(32, 100.0)
        assert low.rhs.complex == pytest.approx(high.rhs.complex, abs=2e-6)

    def test_afe_rejects_squares(self):
        """Test that square discriminants are rejected."""
        with pytest.raises(InvalidArgumentError):
            script_l_via_afe(0, 10.0)

    @pytest.mark.slow
    def test_full_suite(self):
        """Test the series and AFE suite over n ∈ {3..12}, V ∈ {10, 10², 10³}."""
        reports = lfunction_suite()
        assert len(reports) == 6 + 30
        assert all(report.passed for report in reports)
