"""
Dataset Serializers

Validation for every external input: processor and revenue CSV rows and
the nested parameter pack. Unknown keys are rejected at every level.
"""

import math
import re
from collections.abc import Mapping

from rest_framework import serializers

from apps.carbon.models import DesignParams, UsageProfile
from apps.core.exceptions import DomainError
from apps.stochastic.distributions import Distribution

from .models import (
    KIND_CHOICES,
    SEGMENT_CHOICES,
    GlobalParameters,
    NodeEntry,
    NodeParameterPack,
    ProcessorRecord,
    RevenueRecord,
)

# Dot decimal separator only; no locale forms, no nan/inf words.
NUMBER_RE = re.compile(r'[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?')

DISTRIBUTION_PARAMS = {
    'point': ('value',),
    'uniform': ('lo', 'hi'),
    'gaussian': ('mean', 'stddev'),
    'kde': ('observations',),
}
OPTIONAL_DISTRIBUTION_PARAMS = {'kde': ('bandwidth',)}


class StrictFieldsMixin:
    """Reject keys the serializer does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, Mapping):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {key: ["Unknown field."] for key in unknown}
                )
        return super().to_internal_value(data)


class FiniteFloatField(serializers.FloatField):
    """FloatField that refuses NaN, infinities, booleans and non-dot decimals."""

    default_error_messages = {
        'non_finite': "A finite number is required.",
        'positive': "Ensure this value is greater than 0.",
    }

    def __init__(self, **kwargs):
        self.positive = kwargs.pop('positive', False)
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, str) and not NUMBER_RE.fullmatch(data.strip()):
            self.fail('invalid')
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            self.fail('non_finite')
        if self.positive and not value > 0:
            self.fail('positive')
        return value


class ProcessorRecordSerializer(StrictFieldsMixin, serializers.Serializer):
    """One processors.csv row. Field order is the CSV column order."""

    name = serializers.CharField(max_length=200)
    vendor = serializers.CharField(max_length=100)
    kind = serializers.ChoiceField(choices=KIND_CHOICES)
    segment = serializers.ChoiceField(choices=SEGMENT_CHOICES)
    release_year = serializers.IntegerField(min_value=1990, max_value=2100)
    node_nm = FiniteFloatField(positive=True)
    die_area_mm2 = FiniteFloatField(positive=True)
    transistor_millions = FiniteFloatField(min_value=0, required=False, allow_null=True)
    tdp_w = FiniteFloatField(positive=True)
    chiplet_count = serializers.IntegerField(min_value=1, required=False, default=1)
    price_usd = FiniteFloatField(min_value=0, required=False, allow_null=True)
    perf_opencl = FiniteFloatField(min_value=0, required=False, allow_null=True)
    perf_passmark = FiniteFloatField(min_value=0, required=False, allow_null=True)
    perf_peak_tflops = FiniteFloatField(min_value=0, required=False, allow_null=True)

    def create(self, validated_data):
        return ProcessorRecord(**validated_data)


class RevenueRecordSerializer(StrictFieldsMixin, serializers.Serializer):
    year = serializers.IntegerField(min_value=1990, max_value=2100)
    revenue_usd = FiniteFloatField(min_value=0)
    flagship_name = serializers.CharField(max_length=200)
    unit_price_usd = FiniteFloatField(positive=True)

    def create(self, validated_data):
        return RevenueRecord(**validated_data)


class DistributionSpecSerializer(StrictFieldsMixin, serializers.Serializer):
    """
    `{"type": "point|uniform|gaussian|kde", ...params}`.

    Validates into a Distribution; a kde without a bandwidth is fitted
    with Silverman's rule.
    """

    type = serializers.ChoiceField(choices=tuple(DISTRIBUTION_PARAMS))
    value = FiniteFloatField(required=False)
    lo = FiniteFloatField(required=False)
    hi = FiniteFloatField(required=False)
    mean = FiniteFloatField(required=False)
    stddev = FiniteFloatField(required=False)
    observations = serializers.ListField(child=FiniteFloatField(), required=False, allow_empty=False)
    bandwidth = FiniteFloatField(required=False)
    truncate = serializers.BooleanField(required=False, default=True)

    def validate(self, attrs):
        kind = attrs['type']
        required = DISTRIBUTION_PARAMS[kind]
        allowed = set(required) | set(OPTIONAL_DISTRIBUTION_PARAMS.get(kind, ())) | {'type', 'truncate'}

        errors = {}
        for name in required:
            if name not in attrs:
                errors[name] = [f"This field is required for {kind} distributions."]
        for name in sorted(set(attrs) - allowed):
            errors[name] = [f"Not a parameter of {kind} distributions."]
        if errors:
            raise serializers.ValidationError(errors)

        try:
            return Distribution.from_spec(attrs)
        except DomainError as exc:
            raise serializers.ValidationError(str(exc))


class DesignSerializer(StrictFieldsMixin, serializers.Serializer):
    design_energy_kwh_per_mm2 = FiniteFloatField(min_value=0)
    design_carbon_intensity_kg_per_kwh = FiniteFloatField(min_value=0)
    amortization_volume_units = serializers.IntegerField(min_value=1)

    def validate(self, attrs):
        return DesignParams(**attrs)


class UsageSerializer(StrictFieldsMixin, serializers.Serializer):
    lifetime_years = FiniteFloatField(min_value=0)
    idle_fraction = FiniteFloatField(min_value=0, max_value=1)


class GlobalParametersSerializer(StrictFieldsMixin, serializers.Serializer):
    fab_carbon_intensity_kg_per_kwh = DistributionSpecSerializer()
    use_carbon_intensity_kg_per_kwh = FiniteFloatField(min_value=0)
    design = DesignSerializer()
    usage = UsageSerializer()
    end_of_life_kg_per_package = FiniteFloatField(min_value=0, required=False, default=0.0)

    def validate(self, attrs):
        usage = attrs['usage']
        return GlobalParameters(
            fab_carbon_intensity_kg_per_kwh=attrs['fab_carbon_intensity_kg_per_kwh'],
            use_carbon_intensity_kg_per_kwh=attrs['use_carbon_intensity_kg_per_kwh'],
            design=attrs['design'],
            usage=UsageProfile(
                lifetime_years=usage['lifetime_years'],
                idle_fraction=usage['idle_fraction'],
                use_carbon_intensity_kg_per_kwh=attrs['use_carbon_intensity_kg_per_kwh'],
            ),
            end_of_life_kg_per_package=attrs['end_of_life_kg_per_package'],
        )


class NodeEntrySerializer(StrictFieldsMixin, serializers.Serializer):
    defect_density_per_cm2 = DistributionSpecSerializer()
    epa_kwh_per_cm2 = DistributionSpecSerializer()
    gpa_kg_per_cm2 = DistributionSpecSerializer()
    materials_kg_per_cm2 = FiniteFloatField(min_value=0)
    manufacturing_cost_usd_per_cm2 = FiniteFloatField(min_value=0, required=False, allow_null=True)
    packaging_carbon_kg_per_cm2 = FiniteFloatField(min_value=0)
    packaging_overhead_factors = serializers.DictField(child=FiniteFloatField(min_value=0))
    packaging_yield = FiniteFloatField(positive=True, max_value=1, required=False, default=1.0)
    clustering_alpha = FiniteFloatField(positive=True, required=False, default=2.0)

    def validate_packaging_overhead_factors(self, value):
        factors = {}
        for key, factor in value.items():
            try:
                count = int(key)
            except ValueError:
                count = 0
            if count < 1 or str(count) != str(key).strip():
                raise serializers.ValidationError(f"'{key}' is not a die count >= 1.")
            factors[count] = factor
        if 1 not in factors:
            raise serializers.ValidationError("Factors must include die count 1.")
        return dict(sorted(factors.items()))


class ParameterPackSerializer(StrictFieldsMixin, serializers.Serializer):
    """Top-level pack: `description`, `global` and `nodes` keyed by node nm."""

    description = serializers.CharField(required=False, allow_blank=True, default='')
    nodes = serializers.DictField(child=NodeEntrySerializer())

    def get_fields(self):
        fields = super().get_fields()
        # `global` is a keyword, so it cannot be declared as a class attribute.
        fields['global'] = GlobalParametersSerializer()
        return fields

    def validate_nodes(self, value):
        if not value:
            raise serializers.ValidationError("At least one node is required.")
        nodes = {}
        for key, attrs in value.items():
            try:
                node_nm = float(key)
            except ValueError:
                node_nm = math.nan
            if not (math.isfinite(node_nm) and node_nm > 0):
                raise serializers.ValidationError(f"'{key}' is not a positive node size in nm.")
            if node_nm in nodes:
                raise serializers.ValidationError(f"Node '{key}' is listed twice.")
            nodes[node_nm] = NodeEntry(node_nm=node_nm, **attrs)
        return dict(sorted(nodes.items()))

    def create(self, validated_data):
        return NodeParameterPack(
            nodes=validated_data['nodes'],
            global_params=validated_data['global'],
            description=validated_data.get('description', ''),
        )
