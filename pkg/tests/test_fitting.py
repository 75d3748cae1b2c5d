"""CI model fitting: exact recovery, optimality, and the recalibration."""

import math

import numpy as np
import pytest

from rmapath import (
    CiFitResult,
    DegenerateFitError,
    Environment,
    PathLossSample,
    SimulationConfig,
    ci_pathloss,
    fit_ci,
    fit_report_dict,
    generate_3gpp_dataset,
    reproduce_3gpp_ci,
    residual_stats,
)


def ci_samples(ple, d_values, fc_values, environment=Environment.LOS, sigma=0.0, seed=0):
    rng = np.random.default_rng(seed)
    samples = []
    for d, fc in zip(d_values, fc_values):
        pl = ci_pathloss(fc, d, ple) + (rng.normal(0.0, sigma) if sigma else 0.0)
        samples.append(PathLossSample(fc, d, pl, environment))
    return samples


def excess_and_basis(samples):
    # direct transcription of the fitted quantities, as the test-side oracle
    a = np.array([s.pl_db - 32.4 - 20 * math.log10(s.fc_ghz) for s in samples])
    b = np.array([10 * math.log10(s.d_m) for s in samples])
    return a, b


class TestFitCi:
    @pytest.mark.parametrize("ple", [1.0, 2.16, 3.7, 5.0])
    def test_noiseless_recovery_is_exact(self, ple):
        d = np.geomspace(1.0, 15_000.0, 25)
        fc = np.linspace(0.5, 100.0, 25)
        fit = fit_ci(ci_samples(ple, d, fc))
        assert abs(fit.n - ple) < 1e-9
        assert fit.sigma_db < 1e-9
        assert abs(fit.mean_residual_db) < 1e-9

    def test_single_sample_rejected(self):
        with pytest.raises(DegenerateFitError):
            fit_ci(ci_samples(2.0, [100.0], [28.0]))

    def test_all_samples_at_reference_distance_rejected(self):
        with pytest.raises(DegenerateFitError):
            fit_ci(ci_samples(2.0, [1.0, 1.0, 1.0], [1.0, 28.0, 73.5]))

    def test_sub_reference_distance_rejected(self):
        samples = [PathLossSample(28.0, 0.5, 60.0, Environment.LOS),
                   PathLossSample(28.0, 5.0, 80.0, Environment.LOS)]
        with pytest.raises(ValueError):
            fit_ci(samples)

    def test_mixed_environments_rejected(self):
        samples = (ci_samples(2.0, [10.0, 100.0], [28.0, 28.0], Environment.LOS)
                   + ci_samples(3.0, [10.0, 100.0], [28.0, 28.0], Environment.NLOS))
        with pytest.raises(ValueError, match="per environment"):
            fit_ci(samples)

    def test_frequency_shift_absorbed_by_anchor(self):
        # scaling every frequency by k and adding 20*log10(k) to every loss
        # must leave the fit unchanged
        d = np.geomspace(5.0, 9_000.0, 40)
        fc = np.linspace(1.0, 73.5, 40)
        base = ci_samples(2.75, d, fc, sigma=6.0, seed=3)
        k = 3.7
        shifted = [PathLossSample(s.fc_ghz * k, s.d_m,
                                  s.pl_db + 20 * math.log10(k), s.environment)
                   for s in base]
        fit_a, fit_b = fit_ci(base), fit_ci(shifted)
        assert fit_a.n == pytest.approx(fit_b.n, abs=1e-9)
        assert fit_a.sigma_db == pytest.approx(fit_b.sigma_db, abs=1e-9)

    def test_fitted_exponent_minimizes_squared_residuals(self):
        samples = ci_samples(2.3, np.geomspace(2.0, 8_000.0, 60),
                             np.full(60, 73.5), sigma=5.0, seed=4)
        fit = fit_ci(samples)
        a, b = excess_and_basis(samples)

        def sse(n):
            return float(np.sum((a - n * b) ** 2))

        assert sse(fit.n + 0.01) > sse(fit.n)
        assert sse(fit.n - 0.01) > sse(fit.n)

    def test_weighted_residual_sum_is_zero(self):
        samples = ci_samples(3.1, np.geomspace(2.0, 8_000.0, 60),
                             np.full(60, 28.0), sigma=8.0, seed=5)
        fit = fit_ci(samples)
        a, b = excess_and_basis(samples)
        assert float(np.sum((a - fit.n * b) * b)) == pytest.approx(0.0, abs=1e-9)

    def test_order_invariant(self):
        samples = ci_samples(2.5, np.geomspace(2.0, 8_000.0, 100),
                             np.full(100, 38.0), sigma=4.0, seed=6)
        shuffled = list(samples)
        np.random.default_rng(0).shuffle(shuffled)
        assert fit_ci(samples).n == pytest.approx(fit_ci(shuffled).n, rel=1e-12)

    def test_dataset_and_sample_list_agree(self):
        config = SimulationConfig(environment=Environment.NLOS,
                                  frequencies_ghz=(1.0, 73.0),
                                  samples_per_frequency=500, seed=8)
        dataset = generate_3gpp_dataset(config)
        assert fit_ci(dataset) == fit_ci(dataset.to_samples())


class TestResidualStats:
    def test_std_matches_fit_sigma(self):
        samples = ci_samples(2.8, np.geomspace(2.0, 8_000.0, 80),
                             np.full(80, 60.0), sigma=7.0, seed=9)
        fit = fit_ci(samples)
        report = residual_stats(samples, fit.n)
        # population convention on both sides; means differ only through
        # the nonzero mean residual of the one-parameter fit
        rms = math.sqrt(report.std_db**2 + report.mean_db**2)
        assert rms == pytest.approx(fit.sigma_db, abs=1e-9)
        assert report.count == fit.count
        assert report.min_db <= report.mean_db <= report.max_db

    def test_zero_exponent_at_reference_distance(self):
        samples = [PathLossSample(28.0, 1.0, pl, Environment.LOS)
                   for pl in (60.0, 62.0, 64.0)]
        report = residual_stats(samples, 0.0)
        a, _ = excess_and_basis(samples)
        assert report.std_db == pytest.approx(float(np.std(a)), abs=1e-12)
        assert report.mean_db == pytest.approx(float(np.mean(a)), abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            residual_stats([], 2.0)


class TestReproduce3gppCi:
    def test_los_matches_published_recalibration(self):
        fit = reproduce_3gpp_ci(Environment.LOS, seed=0)
        assert fit.count == 450_000
        assert 2.21 <= fit.n <= 2.41
        assert 5.3 <= fit.sigma_db <= 6.5

    def test_nlos_matches_published_recalibration(self):
        fit = reproduce_3gpp_ci(Environment.NLOS, seed=0)
        assert fit.count == 450_000
        assert 2.94 <= fit.n <= 3.14
        assert 7.7 <= fit.sigma_db <= 8.9

    def test_same_seed_is_bit_identical(self):
        assert reproduce_3gpp_ci(Environment.LOS, seed=42) == \
            reproduce_3gpp_ci(Environment.LOS, seed=42)

    def test_accepts_environment_string(self):
        fit = reproduce_3gpp_ci("NLOS", seed=1)
        assert fit.environment is Environment.NLOS


class TestFitReport:
    def test_report_keys_and_values(self):
        result = CiFitResult(n=2.31, sigma_db=5.9, count=450_000,
                             mean_residual_db=-0.3, environment=Environment.LOS)
        report = fit_report_dict(result, source="run.csv", seed=7,
                                 sampling_mode="linear")
        assert report == {
            "environment": "LOS",
            "n": 2.31,
            "sigma_db": 5.9,
            "count": 450_000,
            "mean_residual_db": -0.3,
            "source": "run.csv",
            "seed": 7,
            "sampling_mode": "linear",
        }
