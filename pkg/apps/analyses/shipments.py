"""
Shipment Aggregation

Fleet-level carbon of a datacenter GPU line: yearly unit shipments are
estimated from revenue and the flagship's price, then multiplied by the
flagship's Monte Carlo per-chip carbon.
"""

import logging
import math

from apps.carbon.models import UsageProfile
from apps.core.exceptions import AnalysisInputError, UnresolvedFlagshipError
from apps.core.utils import closest_match
from apps.metrics.calculators import (
    SHIPMENT_PERFORMANCE_SOURCE,
    normalize_optional,
    perf_per_cfp,
)

from .estimation import estimate_record
from .models import ShipmentReport, ShipmentRow

logger = logging.getLogger(__name__)

# Recorded as metadata only; units come from revenue / price.
PROFIT_MARGIN = 0.75
SHIPMENT_LIFETIME_YEARS = 3.0
SHIPMENT_IDLE_FRACTION = 0.6


def shipped_units(revenue_usd, unit_price_usd):
    return math.floor(revenue_usd / unit_price_usd)


def _resolve_flagships(revenue, records):
    by_name = {record.name: record for record in records}
    flagships = {}
    for row in revenue:
        if row.flagship_name not in by_name:
            suggestion = closest_match(row.flagship_name, list(by_name))
            message = f"Flagship '{row.flagship_name}' ({row.year}) is not in the dataset."
            if suggestion:
                message += f" Did you mean '{suggestion}'?"
            raise UnresolvedFlagshipError(message)
        flagships[row.flagship_name] = by_name[row.flagship_name]
    return flagships


def aggregate_shipments(revenue, records, pack, seed, samples, workers=1):
    """
    Yearly shipment rows, sorted by year and normalized to the first year.

    Each distinct flagship is estimated once, over a fixed three-year
    lifetime at 60% idle with the pack's use-phase carbon intensity.
    """
    if not revenue:
        raise AnalysisInputError("The revenue file has no rows")
    years = [row.year for row in revenue]
    duplicated = sorted({year for year in years if years.count(year) > 1})
    if duplicated:
        raise AnalysisInputError(f"Revenue years repeat: {', '.join(map(str, duplicated))}")

    revenue = sorted(revenue, key=lambda row: row.year)
    flagships = _resolve_flagships(revenue, records)
    usage = UsageProfile(
        lifetime_years=SHIPMENT_LIFETIME_YEARS,
        idle_fraction=SHIPMENT_IDLE_FRACTION,
        use_carbon_intensity_kg_per_kwh=pack.global_params.use_carbon_intensity_kg_per_kwh,
    )

    per_chip, extrapolated, diagnostics = {}, {}, []
    for name in sorted(flagships):
        estimate, resolved = estimate_record(
            flagships[name], pack, seed, samples, usage=usage, workers=workers
        )
        per_chip[name] = estimate.mean_kg
        extrapolated[name] = resolved.extrapolated
        if getattr(flagships[name], SHIPMENT_PERFORMANCE_SOURCE) is None:
            diagnostics.append(f"{name}: no {SHIPMENT_PERFORMANCE_SOURCE} score")

    units = [shipped_units(row.revenue_usd, row.unit_price_usd) for row in revenue]
    chip_cfp = [per_chip[row.flagship_name] for row in revenue]
    totals = [count * cfp for count, cfp in zip(units, chip_cfp)]
    tflops = [getattr(flagships[row.flagship_name], SHIPMENT_PERFORMANCE_SOURCE) for row in revenue]
    tflops_per_cfp = [
        None if score is None else perf_per_cfp(score, cfp)
        for score, cfp in zip(tflops, chip_cfp)
    ]

    normalized_units = normalize_optional(units)
    normalized_chip = normalize_optional(chip_cfp)
    normalized_totals = normalize_optional(totals)
    normalized_efficiency = normalize_optional(tflops_per_cfp)
    if normalized_units[0] is None:
        diagnostics.append(
            f"{revenue[0].year}: no units shipped, normalized columns left empty"
        )

    rows = []
    for index, row in enumerate(revenue):
        rows.append(ShipmentRow(
            year=row.year,
            revenue_usd=row.revenue_usd,
            flagship_name=row.flagship_name,
            unit_price_usd=row.unit_price_usd,
            units=units[index],
            per_chip_cfp_kg=chip_cfp[index],
            total_cfp_kg=totals[index],
            peak_tflops=tflops[index],
            peak_tflops_per_cfp=tflops_per_cfp[index],
            normalized_units=normalized_units[index],
            normalized_per_chip_cfp=normalized_chip[index],
            normalized_total_cfp=normalized_totals[index],
            normalized_peak_tflops_per_cfp=normalized_efficiency[index],
            extrapolated=extrapolated[row.flagship_name],
        ))

    for diagnostic in diagnostics:
        logger.warning(diagnostic)
    logger.info(f"Shipments {rows[0].year}-{rows[-1].year}: {len(rows)} year(s) aggregated")
    return ShipmentReport(
        rows=tuple(rows),
        profit_margin=PROFIT_MARGIN,
        lifetime_years=SHIPMENT_LIFETIME_YEARS,
        idle_fraction=SHIPMENT_IDLE_FRACTION,
        diagnostics=tuple(diagnostics),
    )
