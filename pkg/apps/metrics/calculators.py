"""
Metrics Calculators

Sustainability ratios over a processor and its carbon estimate.
"""

import logging
from dataclasses import dataclass

from apps.carbon.models import MM2_PER_CM2
from apps.core.exceptions import DomainError

logger = logging.getLogger(__name__)

# Designated benchmark per (kind, segment).
PERFORMANCE_SOURCES = {
    ('cpu', 'desktop'): 'perf_opencl',
    ('cpu', 'datacenter'): 'perf_passmark',
    ('gpu', 'desktop'): 'perf_opencl',
    ('gpu', 'datacenter'): 'perf_opencl',
}
SHIPMENT_PERFORMANCE_SOURCE = 'perf_peak_tflops'


def perf_per_cfp(performance, total_cfp_kg):
    """Performance per kg CO2eq of total lifecycle carbon."""
    if not total_cfp_kg > 0:
        raise DomainError(f"total CFP must be > 0, got {total_cfp_kg}")
    return performance / total_cfp_kg


def ecfpa(embodied_kg, area_mm2):
    """Embodied carbon per cm² of silicon (kg CO2eq/cm²)."""
    if not area_mm2 > 0:
        raise DomainError(f"area must be > 0, got {area_mm2}")
    return embodied_kg / (area_mm2 / MM2_PER_CM2)


def perf_per_ecfpa(performance, ecfpa_value):
    if not ecfpa_value > 0:
        raise DomainError(f"ECFPA must be > 0, got {ecfpa_value}")
    return performance / ecfpa_value


def normalize_series(values, baseline_index=0):
    """Each value divided by the baseline; the baseline maps to 1.0."""
    values = list(values)
    if not 0 <= baseline_index < len(values):
        raise DomainError(f"baseline index {baseline_index} outside series of {len(values)}")
    baseline = values[baseline_index]
    if baseline == 0:
        raise DomainError("Cannot normalize against a zero baseline")
    normalized = [value / baseline for value in values]
    normalized[baseline_index] = 1.0
    return normalized


def normalize_optional(values, baseline_index=0):
    """normalize_series, or all None when a value is missing or the baseline is zero."""
    values = list(values)
    if any(value is None for value in values) or values[baseline_index] == 0:
        return [None] * len(values)
    return normalize_series(values, baseline_index)


def performance_source(record):
    return PERFORMANCE_SOURCES[(record.kind, record.segment)]


def performance_score(record, source=None):
    """(score, source) for the record's designated benchmark; score may be None."""
    source = source or performance_source(record)
    return getattr(record, source), source


@dataclass(frozen=True)
class MetricRow:
    name: str
    performance_score: float | None
    performance_source: str
    total_cfp_kg: float
    embodied_cfp_kg: float
    operational_cfp_kg: float
    perf_per_cfp: float | None
    ecfpa_kg_per_cm2: float
    perf_per_ecfpa: float | None


def build_metric_row(record, estimate, source=None):
    """
    MetricRow for `record` from the estimate's mean breakdown.

    A missing designated score leaves the performance ratios empty.
    """
    breakdown = estimate.mean_breakdown
    score, source = performance_score(record, source)
    density = ecfpa(breakdown.embodied_kg, record.die_area_mm2)
    if score is None:
        logger.debug(f"{record.name}: no {source} score")
        ratio = density_ratio = None
    else:
        ratio = perf_per_cfp(score, breakdown.total_kg)
        density_ratio = perf_per_ecfpa(score, density)
    return MetricRow(
        name=record.name,
        performance_score=score,
        performance_source=source,
        total_cfp_kg=breakdown.total_kg,
        embodied_cfp_kg=breakdown.embodied_kg,
        operational_cfp_kg=breakdown.operational_kg,
        perf_per_cfp=ratio,
        ecfpa_kg_per_cm2=density,
        perf_per_ecfpa=density_ratio,
    )
