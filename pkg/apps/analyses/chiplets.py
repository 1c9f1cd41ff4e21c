"""
Chiplet Sweep

Manufacturing plus packaging carbon of monolithic and multi-chiplet
configurations over a range of total silicon areas, with the total area
split evenly across dies on one node. Parameters sit at their means.
"""

import logging
import math

from apps.carbon import calculator
from apps.carbon.models import DesignParams, DieSpec
from apps.core.exceptions import AnalysisInputError

from .models import ChipletSweepReport, ChipletSweepRow

logger = logging.getLogger(__name__)

DEFAULT_AREAS_MM2 = tuple(float(area) for area in range(50, 851, 50))
DEFAULT_CHIPLET_COUNTS = (1, 2, 4, 8)
TIE_TOLERANCE = 1e-12


def _validate_axes(areas, counts):
    if not areas:
        raise AnalysisInputError("At least one total area is required")
    if not counts:
        raise AnalysisInputError("At least one chiplet count is required")
    for area in areas:
        if not (math.isfinite(area) and area > 0):
            raise AnalysisInputError(f"Total areas must be > 0 mm², got {area}")
    for count in counts:
        if int(count) != count or count < 1:
            raise AnalysisInputError(f"Chiplet counts must be integers >= 1, got {count}")
    if 1 not in counts:
        raise AnalysisInputError("Chiplet counts must include 1 (monolithic)")
    return sorted(set(float(a) for a in areas)), sorted(set(int(c) for c in counts))


def configuration_cfp(total_area_mm2, count, entry, pack, sample):
    """Breakdown of `count` equal dies sharing `total_area_mm2`, design excluded."""
    die = DieSpec(area_mm2=total_area_mm2 / count, node_nm=entry.node_nm)
    package = pack.package_for((die,) * count, entry)
    return calculator.embodied_cfp(package, sample, DesignParams())


def _optimal_index(values):
    """Index of the minimum; near-ties go to the earlier (fewer chiplets) entry."""
    best = 0
    for index, value in enumerate(values[1:], start=1):
        if value < values[best] and not math.isclose(value, values[best], rel_tol=TIE_TOLERANCE):
            best = index
    return best


def chiplet_sweep(areas, counts, entry, pack, reference_count=None, reference_name=None):
    """
    Sweep every (total area, chiplet count) pair.

    Exactly one row per area is flagged optimal. With `reference_count`,
    each row is also normalized to that count's carbon at the same area.
    """
    areas, counts = _validate_axes(list(areas), list(counts))
    if reference_count is not None and reference_count not in counts:
        counts = sorted(set(counts) | {int(reference_count)})
    sample = pack.inputs_for(entry).mean_sample()

    rows = []
    for area in areas:
        breakdowns = [configuration_cfp(area, count, entry, pack, sample) for count in counts]
        values = [b.embodied_kg for b in breakdowns]
        optimal = _optimal_index(values)
        reference_value = None
        if reference_count is not None:
            reference_value = values[counts.index(reference_count)]
        for index, (count, breakdown) in enumerate(zip(counts, breakdowns)):
            rows.append(ChipletSweepRow(
                total_area_mm2=area,
                chiplet_count=count,
                die_area_mm2=area / count,
                manufacturing_kg=breakdown.manufacturing_kg,
                packaging_kg=breakdown.packaging_kg,
                manufacturing_plus_packaging_cfp_kg=breakdown.embodied_kg,
                normalized_to_reference=(
                    values[index] / reference_value if reference_value else None
                ),
                is_optimal=index == optimal,
                extrapolated=entry.extrapolated,
            ))
        logger.debug(f"{area:g} mm²: optimal chiplet count {counts[optimal]}")

    return ChipletSweepReport(
        node_nm=entry.node_nm,
        rows=tuple(rows),
        extrapolated=entry.extrapolated,
        reference_name=reference_name,
        reference_chiplet_count=reference_count,
    )
