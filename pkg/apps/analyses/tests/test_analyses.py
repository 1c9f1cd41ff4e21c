import json

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase

from apps.analyses.amortization import (
    DEFAULT_IDLE_FRACTIONS,
    DEFAULT_LIFETIMES_YEARS,
    amortization_grid,
)
from apps.analyses.chiplets import DEFAULT_AREAS_MM2, DEFAULT_CHIPLET_COUNTS, chiplet_sweep
from apps.analyses.cost import correlations, cost_ecfp_series
from apps.analyses.estimation import point_breakdown
from apps.analyses.shipments import aggregate_shipments, shipped_units
from apps.analyses.trends import flagship_trend, select_flagships
from apps.core.exceptions import AnalysisInputError, UnresolvedFlagshipError
from apps.dataset.extrapolation import extrapolate_node
from apps.dataset.loaders import (
    find_processor,
    load_pack_file,
    load_parameter_pack,
    load_processors_file,
    load_revenue_file,
)
from apps.dataset.models import ProcessorRecord, RevenueRecord
from apps.dataset.tests.test_loaders import node_data, pack_data, point


class ReferenceDataMixin:
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.pack = load_pack_file(settings.CARBON['PACK_PATH'])
        cls.records, _ = load_processors_file(settings.CARBON['DATASET_PATH'])
        cls.revenue, _ = load_revenue_file(settings.CARBON['REVENUE_PATH'])


def record(name, **overrides):
    values = {
        'name': name, 'vendor': 'Acme', 'kind': 'gpu', 'segment': 'datacenter',
        'release_year': 2020, 'node_nm': 7.0, 'die_area_mm2': 500.0, 'tdp_w': 250.0,
    }
    values.update(overrides)
    return ProcessorRecord(**values)


def brute_force_spearman(x, y):
    def ranks(values):
        return [sum(other < value for other in values) + 1 for value in values]

    rx, ry = ranks(x), ranks(y)
    n = len(x)
    mean = (n + 1) / 2
    covariance = sum((a - mean) * (b - mean) for a, b in zip(rx, ry))
    spread = sum((a - mean) ** 2 for a in rx)
    return covariance / spread


class ChipletSweepTests(ReferenceDataMixin, SimpleTestCase):
    def test_monolithic_optimal_for_small_dies(self):
        report = chiplet_sweep([100.0], DEFAULT_CHIPLET_COUNTS, self.pack.entry(7), self.pack)
        self.assertEqual(report.optimal_counts(), {100.0: 1})

    def test_chiplets_win_for_large_dies(self):
        report = chiplet_sweep([850.0], DEFAULT_CHIPLET_COUNTS, self.pack.entry(7), self.pack)
        self.assertGreater(report.optimal_counts()[850.0], 1)

    def test_optimal_count_is_nondecreasing_in_area(self):
        report = chiplet_sweep(
            DEFAULT_AREAS_MM2, DEFAULT_CHIPLET_COUNTS, self.pack.entry(7), self.pack
        )
        optimal = list(report.optimal_counts().values())
        self.assertEqual(len(optimal), len(DEFAULT_AREAS_MM2))
        self.assertEqual(optimal, sorted(optimal))
        self.assertEqual(len(report.rows), len(DEFAULT_AREAS_MM2) * len(DEFAULT_CHIPLET_COUNTS))

    def test_ties_go_to_monolithic(self):
        pack = load_parameter_pack(json.dumps(pack_data({'7': node_data(
            defect_density_per_cm2=point(0.0),
            packaging_carbon_kg_per_cm2=0.0,
            packaging_overhead_factors={'1': 1.0, '2': 1.5},
        )})))
        report = chiplet_sweep([100.0, 800.0], [1, 2, 4], pack.entry(7), pack)
        self.assertEqual(report.optimal_counts(), {100.0: 1, 800.0: 1})

    def test_reference_normalization(self):
        report = chiplet_sweep(
            [1064.0], [1, 2, 4, 8], self.pack.entry(7), self.pack, reference_count=9
        )
        reference = [row for row in report.rows if row.chiplet_count == 9]
        self.assertEqual(reference[0].normalized_to_reference, 1.0)

    def test_counts_must_include_monolithic(self):
        with self.assertRaises(AnalysisInputError):
            chiplet_sweep([100.0], [2, 4], self.pack.entry(7), self.pack)

    def test_extrapolated_node_is_flagged(self):
        entry = extrapolate_node(self.pack, 5.0)
        report = chiplet_sweep([100.0], [1, 2], entry, self.pack)
        self.assertTrue(all(row.extrapolated for row in report.rows))


class AmortizationTests(ReferenceDataMixin, SimpleTestCase):
    def grid(self):
        a100 = find_processor(self.records, 'A100-SXM')
        breakdown, resolved = point_breakdown(a100, self.pack)
        return amortization_grid(
            a100,
            breakdown.embodied_kg,
            a100.tdp_w,
            DEFAULT_LIFETIMES_YEARS,
            DEFAULT_IDLE_FRACTIONS + (1.0,),
            self.pack.global_params.use_carbon_intensity_kg_per_kwh,
            extrapolated=resolved.extrapolated,
        )

    def test_a100_breaks_even_around_two_years_at_seventy_percent_idle(self):
        row = self.grid().break_even_for(0.7)
        self.assertGreater(row.break_even_lifetime_years, 1.5)
        self.assertLessEqual(row.break_even_lifetime_years, 2.5)
        self.assertGreater(row.exact_break_even_years, 1.5)
        self.assertLessEqual(row.exact_break_even_years, row.break_even_lifetime_years)

    def test_rows_are_hyperbolas_in_lifetime(self):
        grid = self.grid()
        for i, idle in enumerate(grid.idles):
            if idle == 1.0:
                continue
            products = [ratio * lifetime for ratio, lifetime in zip(grid.ratios[i], grid.lifetimes)]
            for product in products:
                self.assertAlmostEqual(product / products[0], 1.0, delta=1e-9)

    def test_doubling_lifetime_halves_ratio(self):
        grid = self.grid()
        self.assertEqual(grid.ratio(0.3, 2.0), grid.ratio(0.3, 1.0) / 2)

    def test_fully_idle_row_is_unbounded(self):
        grid = self.grid()
        self.assertIsNone(grid.ratio(1.0, 3.0))
        self.assertIsNone(grid.break_even_for(1.0).break_even_lifetime_years)
        unbounded = [row for row in grid.rows() if row.idle_fraction == 1.0]
        self.assertTrue(all(row.unbounded and row.operational_cfp_kg == 0 for row in unbounded))

    def test_empty_axes_are_rejected(self):
        a100 = find_processor(self.records, 'A100-SXM')
        with self.assertRaises(AnalysisInputError):
            amortization_grid(a100, 100.0, 400.0, [], [0.5], 0.5)
        with self.assertRaises(AnalysisInputError):
            amortization_grid(a100, 100.0, 400.0, [1.0], [], 0.5)


class ShipmentTests(ReferenceDataMixin, SimpleTestCase):
    def test_units_from_revenue(self):
        self.assertEqual(shipped_units(1e6, 1e4), 100)

    def test_reference_growth(self):
        report = aggregate_shipments(self.revenue, self.records, self.pack, seed=42, samples=2000)
        self.assertEqual([row.year for row in report.rows], list(range(2016, 2025)))
        self.assertEqual(report.rows[0].normalized_total_cfp, 1.0)
        self.assertGreater(report.final.normalized_total_cfp, 50)
        self.assertGreater(report.final.normalized_peak_tflops_per_cfp, 100)
        self.assertTrue(report.final.extrapolated)

    def test_single_year_normalizes_to_one(self):
        revenue = [RevenueRecord(2020, 6.7e9, 'A100-SXM', 25000.0)]
        row = aggregate_shipments(revenue, self.records, self.pack, seed=1, samples=200).final
        self.assertEqual(
            (row.normalized_units, row.normalized_per_chip_cfp, row.normalized_total_cfp,
             row.normalized_peak_tflops_per_cfp),
            (1.0, 1.0, 1.0, 1.0),
        )

    def test_unknown_flagship_is_named(self):
        revenue = [RevenueRecord(2020, 6.7e9, 'A100-SMX', 25000.0)]
        with self.assertRaises(UnresolvedFlagshipError) as caught:
            aggregate_shipments(revenue, self.records, self.pack, seed=1, samples=100)
        self.assertIn('A100-SMX', str(caught.exception))
        self.assertIn("Did you mean 'A100-SXM'?", str(caught.exception))

    def test_zero_first_year_units_leave_normalized_columns_empty(self):
        revenue = [
            RevenueRecord(2016, 1000.0, 'Tesla P100 SXM2', 9400.0),
            RevenueRecord(2017, 1.93e9, 'Tesla V100 SXM2', 10664.0),
        ]
        report = aggregate_shipments(revenue, self.records, self.pack, seed=1, samples=100)
        self.assertEqual([row.units for row in report.rows], [0, 180982])
        self.assertEqual([row.normalized_units for row in report.rows], [None, None])
        self.assertEqual([row.normalized_total_cfp for row in report.rows], [None, None])
        self.assertEqual(report.rows[0].normalized_per_chip_cfp, 1.0)
        self.assertTrue(any('2016' in line for line in report.diagnostics))

    def test_repeated_years_are_rejected(self):
        revenue = [RevenueRecord(2020, 1e9, 'A100-SXM', 25000.0)] * 2
        with self.assertRaises(AnalysisInputError):
            aggregate_shipments(revenue, self.records, self.pack, seed=1, samples=100)


class CorrelationTests(SimpleTestCase):
    def test_proportional_series(self):
        spearman, pearson = correlations([1.0, 2.0], [3.0, 6.0])
        self.assertAlmostEqual(spearman, 1.0)
        self.assertAlmostEqual(pearson, 1.0)

    def test_reversed_series(self):
        spearman, _ = correlations([1.0, 2.0, 3.0], [9.0, 5.0, 1.0])
        self.assertAlmostEqual(spearman, -1.0)

    def test_matches_brute_force_ranks(self):
        rng = np.random.default_rng(5)
        for size in range(3, 11):
            x, y = rng.normal(size=size), rng.normal(size=size)
            spearman, _ = correlations(x, y)
            self.assertAlmostEqual(spearman, brute_force_spearman(list(x), list(y)), places=12)

    def test_constant_series_is_undefined(self):
        self.assertEqual(correlations([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]), (None, None))
        self.assertEqual(correlations([1.0], [2.0]), (None, None))


class CostSeriesTests(ReferenceDataMixin, SimpleTestCase):
    def test_reference_series(self):
        report = cost_ecfp_series(self.records, self.pack, seed=42, samples=200)
        self.assertEqual(len(report.rows), len(self.records))
        self.assertEqual(report.skipped_count, 0)
        self.assertIsNotNone(report.spearman)
        nodes = [row.node_nm for row in report.nodes]
        self.assertEqual(nodes, sorted(nodes, reverse=True))
        self.assertEqual(report.nodes[0].normalized_cost, 1.0)
        self.assertEqual(report.nodes[0].normalized_ecfpa, 1.0)

    def test_nodes_without_cost_are_skipped(self):
        pack = load_parameter_pack(json.dumps(pack_data({
            '7': node_data(manufacturing_cost_usd_per_cm2=10.0),
            '14': node_data(),
        })))
        records = [record('Costed'), record('Uncosted', node_nm=14.0)]
        report = cost_ecfp_series(records, pack, seed=1, samples=100)
        self.assertEqual([row.name for row in report.rows], ['Costed'])
        self.assertEqual(report.skipped_count, 1)
        self.assertIsNone(report.spearman)

    def test_zero_cost_on_largest_node_leaves_normalized_columns_empty(self):
        pack = load_parameter_pack(json.dumps(pack_data({
            '7': node_data(manufacturing_cost_usd_per_cm2=10.0),
            '14': node_data(manufacturing_cost_usd_per_cm2=0.0),
        })))
        records = [record('Old', node_nm=14.0), record('New')]
        report = cost_ecfp_series(records, pack, seed=1, samples=100)
        self.assertEqual([row.node_nm for row in report.nodes], [14.0, 7.0])
        self.assertEqual([row.normalized_cost for row in report.nodes], [None, None])
        self.assertEqual([row.divergence for row in report.nodes], [None, None])
        self.assertEqual(report.nodes[0].normalized_ecfpa, 1.0)

    def test_no_costable_record(self):
        pack = load_parameter_pack(json.dumps(pack_data()))
        with self.assertRaises(AnalysisInputError):
            cost_ecfp_series([record('Uncosted')], pack, seed=1, samples=100)


class FlagshipTests(ReferenceDataMixin, SimpleTestCase):
    def test_single_record_per_year(self):
        only = record('Only')
        self.assertEqual(select_flagships([only]), {('Acme', 'datacenter', 'gpu'): [only]})

    def test_largest_die_wins(self):
        big, small = record('Big', die_area_mm2=600.0), record('Small', die_area_mm2=500.0)
        self.assertEqual(select_flagships([small, big])[big.group_key], [big])

    def test_higher_tdp_breaks_area_ties(self):
        hot, cool = record('Hot', tdp_w=300.0), record('Cool', tdp_w=250.0)
        self.assertEqual(select_flagships([cool, hot])[hot.group_key], [hot])

    def test_name_breaks_remaining_ties(self):
        alpha, beta = record('Alpha'), record('Beta')
        self.assertEqual(select_flagships([beta, alpha])[alpha.group_key], [alpha])

    def test_reference_trend(self):
        report = flagship_trend(self.records, self.pack, seed=42, samples=200)
        series = report.series('NVIDIA', 'datacenter', 'gpu')
        years = [row.release_year for row in series]
        self.assertEqual(years, sorted(set(years)))
        self.assertEqual(series[-1].name, 'H100-SXM')
        self.assertTrue(series[-1].extrapolated)
        self.assertTrue(report.diagnostics)
        self.assertEqual(report.skipped_count, len(report.diagnostics))
        self.assertNotIn('Core i7-5960X', [row.name for row in report.rows])

    def test_records_without_their_score_are_skipped(self):
        unscored = record('Big', die_area_mm2=800.0)
        scored = record('Small', die_area_mm2=300.0, perf_opencl=1000.0)
        report = flagship_trend([unscored, scored], self.pack, seed=1, samples=100)
        self.assertEqual([row.name for row in report.rows], ['Small'])
        self.assertEqual(report.skipped_count, 1)
        self.assertIn('Big: no perf_opencl score', report.diagnostics[0])

    def test_empty_dataset(self):
        with self.assertRaises(AnalysisInputError):
            flagship_trend([], self.pack, seed=1, samples=10)
