import json

from django.conf import settings
from django.test import SimpleTestCase

from apps.core.exceptions import DomainError, ParameterPackError
from apps.dataset.extrapolation import extrapolate_node, log_log, nearest_nodes
from apps.dataset.loaders import load_pack_file, load_parameter_pack

from .test_loaders import node_data, pack_data, point


def two_node_pack():
    return load_parameter_pack(json.dumps(pack_data({
        '10': node_data(
            epa_kwh_per_cm2=point(1.0),
            gpa_kg_per_cm2={'type': 'gaussian', 'mean': 0.2, 'stddev': 0.02},
            manufacturing_cost_usd_per_cm2=10.0,
            packaging_overhead_factors={'1': 1.0, '2': 1.4},
        ),
        '7': node_data(
            epa_kwh_per_cm2=point(2.0),
            gpa_kg_per_cm2={'type': 'gaussian', 'mean': 0.4, 'stddev': 0.04},
            manufacturing_cost_usd_per_cm2=20.0,
            packaging_overhead_factors={'1': 1.0, '2': 1.6, '4': 2.0},
        ),
    })))


class LogLogTests(SimpleTestCase):
    def test_geometric_interpolation(self):
        self.assertAlmostEqual(log_log(10, 1.0, 7, 2.0, 4.9), 4.0, places=12)

    def test_equal_values_stay_constant(self):
        self.assertEqual(log_log(10, 3.0, 7, 3.0, 5), 3.0)

    def test_zero_value_falls_back_to_linear(self):
        self.assertAlmostEqual(log_log(10, 0.0, 100, 2.0, 1000), 4.0)

    def test_nearest_nodes_in_log_space(self):
        self.assertEqual(nearest_nodes([5.0, 7.0, 10.0, 14.0], 6.0), (7.0, 5.0))
        self.assertEqual(nearest_nodes([7.0, 10.0, 14.0], 4.0), (7.0, 10.0))


class ExtrapolateNodeTests(SimpleTestCase):
    def test_listed_node_is_returned_unchanged(self):
        pack = two_node_pack()
        entry = extrapolate_node(pack, 7.0)
        self.assertIs(entry, pack.entry(7))
        self.assertFalse(entry.extrapolated)

    def test_epa_scales_log_linearly(self):
        with self.assertLogs('apps.dataset.extrapolation', level='WARNING'):
            entry = extrapolate_node(two_node_pack(), 4.9)
        self.assertTrue(entry.extrapolated)
        self.assertAlmostEqual(entry.epa_kwh_per_cm2.mean, 4.0, places=12)
        self.assertAlmostEqual(entry.gpa_kg_per_cm2.mean, 0.8, places=12)
        self.assertAlmostEqual(entry.gpa_kg_per_cm2.stddev, 0.08, places=12)
        self.assertAlmostEqual(entry.manufacturing_cost_usd_per_cm2, 40.0, places=9)

    def test_overhead_factors_use_shared_counts(self):
        with self.assertLogs('apps.dataset.extrapolation', level='WARNING') as logs:
            entry = extrapolate_node(two_node_pack(), 5.0)
        self.assertTrue(any('die counts 4' in line for line in logs.output))
        self.assertEqual(sorted(entry.packaging_overhead_factors), [1, 2])
        self.assertEqual(entry.packaging_overhead_factors[1], 1.0)

    def test_monotone_series_stays_monotone(self):
        pack = load_pack_file(settings.CARBON['PACK_PATH'])
        means = [
            extrapolate_node(pack, node).epa_kwh_per_cm2.mean
            for node in (3.0, 4.0, 5.0, 6.0, 7.0, 10.0)
        ]
        self.assertEqual(means, sorted(means, reverse=True))

    def test_needs_two_nodes(self):
        pack = load_parameter_pack(json.dumps(pack_data()))
        with self.assertRaises(ParameterPackError):
            extrapolate_node(pack, 5.0)

    def test_rejects_non_positive_target(self):
        with self.assertRaises(DomainError):
            extrapolate_node(two_node_pack(), 0.0)
