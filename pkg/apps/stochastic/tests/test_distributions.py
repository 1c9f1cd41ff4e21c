import numpy as np
from django.test import SimpleTestCase
from scipy import integrate, stats

from apps.core.exceptions import DomainError
from apps.stochastic.distributions import (
    Distribution,
    Gaussian,
    KernelDensity,
    PointMass,
    Uniform,
    fit_kde,
    silverman_bandwidth,
)


class SamplingTests(SimpleTestCase):
    def setUp(self):
        self.rng = np.random.default_rng(12345)

    def test_point_mass_always_returns_its_value(self):
        draws = PointMass(3.5).draw(self.rng, 1000)
        self.assertTrue(np.all(draws == 3.5))
        self.assertEqual(PointMass(3.5).sample(self.rng), 3.5)

    def test_uniform_sample_mean(self):
        draws = Uniform(0.0, 1.0).draw(self.rng, 100_000)
        self.assertAlmostEqual(float(draws.mean()), 0.5, delta=0.01)
        self.assertTrue(np.all((draws >= 0) & (draws < 1)))

    def test_single_observation_kde_is_gaussian(self):
        draws = KernelDensity((2.0,), 0.5, truncate=False).draw(self.rng, 20_000)
        self.assertAlmostEqual(float(draws.mean()), 2.0, delta=0.03)
        self.assertAlmostEqual(float(draws.std()), 0.5, delta=0.02)
        self.assertGreater(stats.kstest(draws, 'norm', args=(2.0, 0.5)).pvalue, 1e-3)

    def test_truncated_draws_are_nonnegative(self):
        draws = Gaussian(0.0, 1.0).draw(self.rng, 10_000)
        self.assertTrue(np.all(draws >= 0))

    def test_untruncated_draws_can_be_negative(self):
        draws = Gaussian(0.0, 1.0, truncate=False).draw(self.rng, 10_000)
        self.assertTrue(np.any(draws < 0))

    def test_truncation_clamps_after_exhausting_attempts(self):
        draws = Gaussian(-100.0, 1.0).draw(self.rng, 50)
        self.assertTrue(np.all(draws == 0.0))


class ValidationTests(SimpleTestCase):
    def test_uniform_needs_ordered_bounds(self):
        with self.assertRaises(DomainError):
            Uniform(1.0, 1.0)

    def test_gaussian_needs_positive_stddev(self):
        with self.assertRaises(DomainError):
            Gaussian(0.0, 0.0)

    def test_point_mass_has_no_density(self):
        with self.assertRaises(DomainError):
            PointMass(1.0).pdf(1.0)

    def test_spec_round_trip(self):
        for distribution in (
            PointMass(1.5),
            Uniform(0.1, 0.2, truncate=False),
            Gaussian(0.3, 0.03),
            KernelDensity((0.1, 0.2, 0.3), 0.05),
        ):
            self.assertEqual(Distribution.from_spec(distribution.to_spec()), distribution)


class FitKdeTests(SimpleTestCase):
    def test_silverman_bandwidth_of_two_points(self):
        self.assertAlmostEqual(silverman_bandwidth([0.0, 1.0]), 0.3916, delta=1e-3)

    def test_equal_observations_give_near_point_mass(self):
        kde = fit_kde([5.0, 5.0, 5.0])
        self.assertAlmostEqual(kde.bandwidth, 5e-6)
        draws = kde.draw(np.random.default_rng(1), 1000)
        self.assertLess(float(np.abs(draws - 5.0).max()), 1e-4)

    def test_needs_two_observations(self):
        with self.assertRaises(DomainError):
            fit_kde([1.0])

    def test_pdf_integrates_to_one(self):
        rng = np.random.default_rng(99)
        for _ in range(20):
            observations = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 3), int(rng.integers(2, 40)))
            kde = fit_kde(observations)
            lo = observations.min() - 6 * kde.bandwidth
            hi = observations.max() + 6 * kde.bandwidth
            grid = np.linspace(lo, hi, 20_001)
            density = kde.pdf(grid)
            self.assertTrue(np.all(density >= 0))
            self.assertAlmostEqual(float(integrate.trapezoid(density, grid)), 1.0, delta=1e-3)

    def test_location_scale_keeps_shape(self):
        kde = KernelDensity((1.0, 2.0, 3.0), 0.1)
        moved = kde.with_location_scale(4.0, 0.2)
        self.assertAlmostEqual(moved.mean, 4.0)
        self.assertEqual(moved.bandwidth, 0.2)
        self.assertEqual(len(moved.observations), 3)
