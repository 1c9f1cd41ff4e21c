"""
Amortization Grid

Ratio of embodied to operational carbon across service lifetimes and
idle fractions. A ratio at or below 1 means use-phase emissions have
caught up with the embodied footprint.
"""

import logging
import math

from apps.carbon import calculator
from apps.carbon.models import UsageProfile
from apps.core.exceptions import AnalysisInputError

from .models import AmortizationGrid, BreakEvenRow

logger = logging.getLogger(__name__)

DEFAULT_LIFETIMES_YEARS = tuple(0.5 * step for step in range(1, 11))
DEFAULT_IDLE_FRACTIONS = tuple(round(0.1 * step, 10) for step in range(10))


def _validate_axes(lifetimes, idles):
    if not lifetimes:
        raise AnalysisInputError("The lifetime axis is empty")
    if not idles:
        raise AnalysisInputError("The idle axis is empty")
    for lifetime in lifetimes:
        if not (math.isfinite(lifetime) and lifetime > 0):
            raise AnalysisInputError(f"Lifetimes must be > 0 years, got {lifetime}")
    for idle in idles:
        if not (math.isfinite(idle) and 0 <= idle <= 1):
            raise AnalysisInputError(f"Idle fractions must lie in [0, 1], got {idle}")
    return tuple(sorted(set(lifetimes))), tuple(sorted(set(idles)))


def amortization_grid(record, embodied_kg, tdp_w, lifetimes, idles, use_carbon_intensity, extrapolated=False):
    """
    Grid of ECFP / OCFP(lifetime, idle) for `record`.

    Cells with zero operational carbon are unbounded (None). The
    break-even of each idle row is the smallest lifetime on the axis with
    a ratio <= 1, plus the exact crossing ECFP / annual OCFP.
    """
    lifetimes, idles = _validate_axes(list(lifetimes), list(idles))
    if not (math.isfinite(embodied_kg) and embodied_kg >= 0):
        raise AnalysisInputError(f"Embodied carbon must be >= 0, got {embodied_kg}")

    operational, ratios, break_even = [], [], []
    for idle in idles:
        row_operational, row_ratios = [], []
        for lifetime in lifetimes:
            usage = UsageProfile(
                lifetime_years=lifetime,
                idle_fraction=idle,
                use_carbon_intensity_kg_per_kwh=use_carbon_intensity,
            )
            ocfp = calculator.operational_cfp(tdp_w, usage)
            row_operational.append(ocfp)
            row_ratios.append(embodied_kg / ocfp if ocfp > 0 else None)
        operational.append(tuple(row_operational))
        ratios.append(tuple(row_ratios))

        on_axis = next(
            (lifetime for lifetime, ratio in zip(lifetimes, row_ratios)
             if ratio is not None and ratio <= 1),
            None,
        )
        annual = calculator.annual_operational_cfp(tdp_w, idle, use_carbon_intensity)
        exact = embodied_kg / annual if annual > 0 else None
        break_even.append(BreakEvenRow(
            idle_fraction=idle,
            break_even_lifetime_years=on_axis,
            exact_break_even_years=exact,
        ))

    logger.info(f"Amortization grid for {record.name}: {len(idles)} x {len(lifetimes)} cells")
    return AmortizationGrid(
        processor_name=record.name,
        embodied_cfp_kg=embodied_kg,
        tdp_w=tdp_w,
        use_carbon_intensity_kg_per_kwh=use_carbon_intensity,
        lifetimes=lifetimes,
        idles=idles,
        operational=tuple(operational),
        ratios=tuple(ratios),
        break_even=tuple(break_even),
        extrapolated=extrapolated,
    )
