"""
Report Serializers

Read-only serializers for every report row. The declared field order is
the column order of the CSV and JSON reports.
"""

from rest_framework import serializers


class EstimateRowSerializer(serializers.Serializer):
    name = serializers.CharField()
    node_nm = serializers.FloatField()
    chiplet_count = serializers.IntegerField()
    sample_count = serializers.IntegerField()
    mean_kg = serializers.FloatField()
    stddev_kg = serializers.FloatField()
    p5_kg = serializers.FloatField()
    p25_kg = serializers.FloatField()
    p50_kg = serializers.FloatField()
    p75_kg = serializers.FloatField()
    p95_kg = serializers.FloatField()
    design_kg = serializers.FloatField()
    manufacturing_kg = serializers.FloatField()
    packaging_kg = serializers.FloatField()
    embodied_kg = serializers.FloatField()
    operational_kg = serializers.FloatField()
    rejected_count = serializers.IntegerField()
    extrapolated = serializers.BooleanField()


class OverlapRowSerializer(serializers.Serializer):
    processor_a = serializers.CharField()
    processor_b = serializers.CharField()
    overlap = serializers.FloatField()


class ChipletSweepRowSerializer(serializers.Serializer):
    total_area_mm2 = serializers.FloatField()
    chiplet_count = serializers.IntegerField()
    die_area_mm2 = serializers.FloatField()
    manufacturing_kg = serializers.FloatField()
    packaging_kg = serializers.FloatField()
    manufacturing_plus_packaging_cfp_kg = serializers.FloatField()
    normalized_to_reference = serializers.FloatField(allow_null=True)
    is_optimal = serializers.BooleanField()
    extrapolated = serializers.BooleanField()


class AmortizationRowSerializer(serializers.Serializer):
    idle_fraction = serializers.FloatField()
    lifetime_years = serializers.FloatField()
    embodied_cfp_kg = serializers.FloatField()
    operational_cfp_kg = serializers.FloatField()
    ratio = serializers.FloatField(allow_null=True)
    unbounded = serializers.BooleanField()
    extrapolated = serializers.BooleanField()


class BreakEvenRowSerializer(serializers.Serializer):
    idle_fraction = serializers.FloatField()
    break_even_lifetime_years = serializers.FloatField(allow_null=True)
    exact_break_even_years = serializers.FloatField(allow_null=True)


class ShipmentRowSerializer(serializers.Serializer):
    year = serializers.IntegerField()
    revenue_usd = serializers.FloatField()
    flagship_name = serializers.CharField()
    unit_price_usd = serializers.FloatField()
    units = serializers.IntegerField()
    per_chip_cfp_kg = serializers.FloatField()
    total_cfp_kg = serializers.FloatField()
    peak_tflops = serializers.FloatField(allow_null=True)
    peak_tflops_per_cfp = serializers.FloatField(allow_null=True)
    normalized_units = serializers.FloatField(allow_null=True)
    normalized_per_chip_cfp = serializers.FloatField(allow_null=True)
    normalized_total_cfp = serializers.FloatField(allow_null=True)
    normalized_peak_tflops_per_cfp = serializers.FloatField(allow_null=True)
    extrapolated = serializers.BooleanField()


class CostRowSerializer(serializers.Serializer):
    name = serializers.CharField()
    node_nm = serializers.FloatField()
    die_area_mm2 = serializers.FloatField()
    manufacturing_cost_usd = serializers.FloatField()
    embodied_cfp_kg = serializers.FloatField()
    price_usd = serializers.FloatField(allow_null=True)
    extrapolated = serializers.BooleanField()


class NodeDivergenceRowSerializer(serializers.Serializer):
    node_nm = serializers.FloatField()
    record_count = serializers.IntegerField()
    cost_usd_per_cm2 = serializers.FloatField()
    ecfpa_kg_per_cm2 = serializers.FloatField()
    normalized_cost = serializers.FloatField(allow_null=True)
    normalized_ecfpa = serializers.FloatField(allow_null=True)
    divergence = serializers.FloatField(allow_null=True)
    extrapolated = serializers.BooleanField()


class CorrelationSummarySerializer(serializers.Serializer):
    series = serializers.CharField()
    row_count = serializers.IntegerField()
    spearman = serializers.FloatField(allow_null=True)
    pearson = serializers.FloatField(allow_null=True)


class TrendRowSerializer(serializers.Serializer):
    vendor = serializers.CharField()
    segment = serializers.CharField()
    kind = serializers.CharField()
    release_year = serializers.IntegerField()
    name = serializers.CharField()
    node_nm = serializers.FloatField()
    die_area_mm2 = serializers.FloatField()
    tdp_w = serializers.FloatField()
    performance_score = serializers.FloatField(allow_null=True)
    performance_source = serializers.CharField()
    total_cfp_kg = serializers.FloatField()
    embodied_cfp_kg = serializers.FloatField()
    operational_cfp_kg = serializers.FloatField()
    perf_per_cfp = serializers.FloatField(allow_null=True)
    ecfpa_kg_per_cm2 = serializers.FloatField()
    perf_per_ecfpa = serializers.FloatField(allow_null=True)
    extrapolated = serializers.BooleanField()


class DiagnosticRowSerializer(serializers.Serializer):
    source = serializers.CharField()
    row = serializers.IntegerField()
    message = serializers.CharField()
