from django.test import SimpleTestCase

from apps.carbon.models import CarbonBreakdown
from apps.core.exceptions import DomainError
from apps.dataset.models import ProcessorRecord
from apps.metrics.calculators import (
    build_metric_row,
    ecfpa,
    normalize_optional,
    normalize_series,
    perf_per_cfp,
    perf_per_ecfpa,
    performance_source,
)
from apps.stochastic.models import CarbonEstimate


def record(**overrides):
    values = {
        'name': 'Chip', 'vendor': 'Acme', 'kind': 'cpu', 'segment': 'datacenter',
        'release_year': 2021, 'node_nm': 7.0, 'die_area_mm2': 200.0, 'tdp_w': 200.0,
        'perf_passmark': 5000.0,
    }
    values.update(overrides)
    return ProcessorRecord(**values)


def estimate(embodied_kg, operational_kg):
    breakdown = CarbonBreakdown.compose(0.0, embodied_kg, 0.0, operational_kg)
    return CarbonEstimate.from_samples([breakdown.total_kg], breakdown)


class RatioTests(SimpleTestCase):
    def test_perf_per_cfp(self):
        self.assertEqual(perf_per_cfp(0, 10), 0)
        self.assertEqual(perf_per_cfp(1000, 500), 2.0)
        self.assertAlmostEqual(perf_per_cfp(1000, 4 * 500), perf_per_cfp(1000, 500) / 4)

    def test_perf_per_cfp_rejects_zero_carbon(self):
        with self.assertRaises(DomainError):
            perf_per_cfp(1000, 0)

    def test_ecfpa(self):
        self.assertEqual(ecfpa(0, 100), 0)
        self.assertEqual(ecfpa(2.0, 100), 2.0)
        self.assertEqual(ecfpa(2.0, 50 + 50), ecfpa(2.0, 100))
        with self.assertRaises(DomainError):
            ecfpa(1.0, 0)

    def test_perf_per_ecfpa(self):
        self.assertEqual(perf_per_ecfpa(0, 3.0), 0)
        self.assertEqual(perf_per_ecfpa(1200, 3.0), 400)
        self.assertGreater(perf_per_ecfpa(1200, 2.0), perf_per_ecfpa(1200, 3.0))

    def test_ranking_survives_common_rescaling(self):
        scores, carbon = [10.0, 30.0, 20.0], [5.0, 12.0, 4.0]
        ranked = sorted(range(3), key=lambda i: perf_per_cfp(scores[i], carbon[i]))
        rescaled = sorted(range(3), key=lambda i: perf_per_cfp(scores[i], 7.5 * carbon[i]))
        self.assertEqual(ranked, rescaled)


class NormalizeSeriesTests(SimpleTestCase):
    def test_identity_series(self):
        self.assertEqual(normalize_series([3.0, 3.0, 3.0]), [1.0, 1.0, 1.0])

    def test_first_value_baseline(self):
        self.assertEqual(normalize_series([2, 4, 10]), [1.0, 2.0, 5.0])

    def test_idempotent(self):
        once = normalize_series([0.3, 0.7, 1.1])
        self.assertEqual(normalize_series(once), once)

    def test_other_baseline(self):
        self.assertEqual(normalize_series([2, 4, 10], baseline_index=1), [0.5, 1.0, 2.5])

    def test_zero_baseline(self):
        with self.assertRaises(DomainError):
            normalize_series([0, 1])

    def test_optional_series_is_empty_without_a_baseline(self):
        self.assertEqual(normalize_optional([0, 1, 2]), [None, None, None])
        self.assertEqual(normalize_optional([1.0, None]), [None, None])
        self.assertEqual(normalize_optional([2, 4]), [1.0, 2.0])


class MetricRowTests(SimpleTestCase):
    def test_designated_benchmark_per_kind_and_segment(self):
        self.assertEqual(performance_source(record()), 'perf_passmark')
        self.assertEqual(performance_source(record(segment='desktop')), 'perf_opencl')
        self.assertEqual(performance_source(record(kind='gpu')), 'perf_opencl')

    def test_metric_row(self):
        row = build_metric_row(record(), estimate(100.0, 400.0))
        self.assertEqual(row.total_cfp_kg, 500.0)
        self.assertEqual(row.perf_per_cfp, 10.0)
        self.assertEqual(row.ecfpa_kg_per_cm2, 50.0)
        self.assertEqual(row.perf_per_ecfpa, 100.0)

    def test_missing_score_leaves_ratios_empty(self):
        row = build_metric_row(record(perf_passmark=None), estimate(100.0, 400.0))
        self.assertIsNone(row.performance_score)
        self.assertIsNone(row.perf_per_cfp)
        self.assertIsNone(row.perf_per_ecfpa)
        self.assertEqual(row.ecfpa_kg_per_cm2, 50.0)
