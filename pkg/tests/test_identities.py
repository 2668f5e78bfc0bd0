"""Tests for the identity checks: cosine, Fourier, argument inequality, Kuznetsov, exact formula."""

import math

import pytest

from common.exceptions import InvalidArgumentError
from identities import (
    arctan_addition_check,
    arg_inequality_check,
    cosine_kloosterman_check,
    cosine_kloosterman_suite,
    decay_cutoff,
    exact_formula_check,
    f_psi,
    fourier_check,
    inequality_grid,
    kuznetsov_check,
    l_phi_sum_at_one,
    residue_term,
    weighted_kloosterman_sum,
    z_psi_lhs,
    z_psi_rhs,
)
from testfun import phi


class TestCosineIdentity:
    """Test cases for Σ S(l,l;q) cos(2πln/q) = q·ρ_q(n² − 4)."""

    def test_hand_checked(self):
        """Test q = 3, n = 3 where both sides vanish, and q = 1."""
        report = cosine_kloosterman_check(3, 3)
        assert report.passed
        assert report.rhs.complex == 0
        assert report.lhs.complex == pytest.approx(0.0, abs=1e-12)
        trivial = cosine_kloosterman_check(1, 7)
        assert trivial.passed
        assert trivial.rhs.complex == 1

    def test_small_suite(self):
        """Test every (q, n) with q ≤ 60, n ≤ 30."""
        reports = cosine_kloosterman_suite(60, 30)
        assert len(reports) == 60 * 31
        assert all(report.passed for report in reports)
        assert [r.params["q"] for r in reports[:32]] == [1] * 31 + [2]

    def test_threaded_suite_is_identical(self):
        """Test that threading does not change the reports or their order."""
        sequential = cosine_kloosterman_suite(40, 10)
        threaded = cosine_kloosterman_suite(40, 10, threads=4)
        assert [r.model_dump() for r in threaded] == [r.model_dump() for r in sequential]

    def test_invalid(self):
        """Test that q < 1 is rejected."""
        with pytest.raises(InvalidArgumentError):
            cosine_kloosterman_check(0, 1)

    @pytest.mark.slow
    def test_exhaustive(self):
        """Test every (q, n) with q ≤ 300, n ≤ 30."""
        assert all(report.passed for report in cosine_kloosterman_suite(300, 30, threads=2))


class TestFourierExpansion:
    """Test cases for the symmetrized Fourier expansion."""

    @pytest.mark.parametrize("x, s", [(0.5, 1.75), (0.3, 1.75), (0.5, 2.0 + 1.0j)])
    def test_expansion(self, params, x, s):
        """Test (F(x,s) + F(1−x,s))/2 = 2Σ*Φ(n,s)cos 2πnx."""
        report = fourier_check(x, s, params)
        assert report.passed, report.abs_err

    def test_series_tail(self, params):
        """Test that the direct series reports a tiny tail."""
        value = f_psi(0.5, 1.75, params)
        assert value.tail_bound < 1e-12 * abs(value.complex)

    def test_series_matches_direct_sum(self, params):
        """Test F_φ(x, s) against an explicit sum over the first sixty terms."""
        s = 1.75 + 0.5j
        for x in (0.25, 0.5, 1.0):
            direct = sum(
                (k + x) ** (-s) * complex(phi(4.0 * math.pi * (k + x), params)) for k in range(60)
            )
            assert f_psi(x, s, params).complex == pytest.approx(direct, rel=1e-12)

    def test_domain(self, params):
        """Test that Re s outside (3/2, 3) and x outside (0, 1) are rejected."""
        with pytest.raises(InvalidArgumentError):
            fourier_check(0.5, 1.2, params)
        with pytest.raises(InvalidArgumentError):
            fourier_check(1.0, 1.75, params)
        with pytest.raises(InvalidArgumentError):
            f_psi(0.0, 1.75, params)


class TestArgumentInequality:
    """Test cases for the argument inequality and the arctan addition rule."""

    def test_zero_shift(self, params):
        """Test that t = 0 gives margin exactly 0."""
        passed, margin = arg_inequality_check(3.0, 0.0, params)
        assert passed
        assert margin == 0.0

    def test_pointwise(self, params):
        """Test both signs on a few (n, t)."""
        for n in (0.0, 1.0, 2.0 * params.b, 50.0):
            for t in (-10.0, -0.5, 0.5, 10.0):
                passed, margin = arg_inequality_check(n, t, params)
                assert passed, (n, t, margin)

    def test_grid(self):
        """Test the default sampling grid."""
        summary = inequality_grid()
        assert summary.samples == 4 * 3 * 1100 * 8 * 2
        assert summary.violations == 0
        assert summary.passed

    def test_arctan_addition(self, params):
        """Test the addition rule just past and far past n = 2b."""
        for offset in (0.5, 2.0, 10.0, 100.0):
            assert arctan_addition_check(2.0 * params.b + offset, params).passed
        with pytest.raises(InvalidArgumentError):
            arctan_addition_check(params.b, params)
        with pytest.raises(InvalidArgumentError):
            arg_inequality_check(-1.0, 1.0, params)


class TestKuznetsov:
    """Test cases for the Kuznetsov-type identity pieces."""

    def test_decay_cutoff(self, params):
        """Test that x²e^{−ax} has dropped below 10⁻¹² of its peak."""
        x = decay_cutoff(params)
        peak = (2.0 / params.a) ** 2 * math.exp(-2.0)
        assert x > 2.0 / params.a
        assert x**2 * math.exp(-params.a * x) <= 1e-12 * peak

    def test_lhs_single_modulus(self, params):
        """Test that Q = 1 reduces to Σ_n n^{−s}φ(4πn) with no extrapolated tail."""
        s = 1.75
        value = z_psi_lhs(s, params, 1)
        count = int(math.ceil(decay_cutoff(params) / (4.0 * math.pi)))
        direct = sum(
            n ** (-s) * complex(phi(4.0 * math.pi * n, params)) for n in range(1, count + 1)
        )
        assert value.complex == pytest.approx(direct, rel=1e-10)
        assert value.tail_bound == 0.0
        with pytest.raises(InvalidArgumentError):
            z_psi_lhs(s, params, 0)

    def test_rhs_validation(self, params):
        """Test the strip and truncation preconditions."""
        with pytest.raises(InvalidArgumentError):
            z_psi_rhs(1.2, params, 50)
        with pytest.raises(InvalidArgumentError):
            z_psi_rhs(1.75, params, 2)

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [1.6, 1.75, 1.9])
    def test_identity(self, params_small_x, s):
        """Test Z_φ(s) spectral against geometric side at (X, T) = (8, 3)."""
        n_max = int(math.ceil(40.0 * math.sqrt(params_small_x.X)))
        report = kuznetsov_check(s, params_small_x, 10_000, n_max, threads=2)
        assert report.passed, (report.abs_err, report.lhs_tail, report.rhs_tail)


class TestExactFormula:
    """Test cases for the exact formula pieces."""

    def test_residue_converges(self, params, bump):
        """Test that the contour residue is stable in node count and radius."""
        base = residue_term(params, bump)
        assert residue_term(params, bump, nodes=128) == pytest.approx(base, rel=1e-10)
        assert residue_term(params, bump, radius=0.2) == pytest.approx(base, rel=1e-9)

    def test_weighted_sum_is_thread_independent(self, params, bump):
        """Test identical values for sequential and threaded evaluation."""
        sequential = weighted_kloosterman_sum(params, bump, 80)
        threaded = weighted_kloosterman_sum(params, bump, 80, threads=3)
        assert threaded.complex == sequential.complex
        assert threaded.tail_bound == sequential.tail_bound
        assert sequential.terms_used == 80

    def test_weil_tail_shrinks_with_q(self, params, bump):
        """Test that a larger Q leaves a smaller q-tail."""
        small = weighted_kloosterman_sum(params, bump, 50)
        large = weighted_kloosterman_sum(params, bump, 400)
        assert large.tail_bound < small.tail_bound
        assert abs(large.complex - small.complex) <= small.tail_bound + large.tail_bound

    def test_l_phi_sum_validation(self, params):
        """Test that N_max < 3 is rejected."""
        with pytest.raises(InvalidArgumentError):
            l_phi_sum_at_one(params, 2)

    def test_l_phi_sum_correction(self, params):
        """Test that the mean-value tail makes the sum stable in N_max."""
        short = l_phi_sum_at_one(params, 200)
        long = l_phi_sum_at_one(params, 400)
        assert abs(short.complex - long.complex) <= short.tail_bound + long.tail_bound

    @pytest.mark.slow
    def test_identity(self, params, bump):
        """Test the exact formula at (X, T, N) = (10, 4, 10)."""
        n_max = int(math.ceil(40.0 * math.sqrt(params.X)))
        report = exact_formula_check(params, bump, 10_000, n_max, threads=2)
        assert report.passed, (report.rel_err, report.details)
