"""
Flagship Trends

Per (vendor, segment, kind) product line, picks one flagship per release
year and reports its carbon and sustainability metrics over time.
"""

import logging
from collections import defaultdict

from apps.core.exceptions import AnalysisInputError
from apps.metrics.calculators import build_metric_row, performance_score

from .estimation import estimate_record
from .models import TrendReport, TrendRow

logger = logging.getLogger(__name__)


def flagship_key(record):
    """Largest die, then highest TDP, then the lexicographically first name."""
    return (-record.die_area_mm2, -record.tdp_w, record.name)


def select_flagships(records):
    """{(vendor, segment, kind): [flagship per year, ascending]}; groups sorted."""
    grouped = defaultdict(lambda: defaultdict(list))
    for record in records:
        grouped[record.group_key][record.release_year].append(record)
    return {
        key: [min(grouped[key][year], key=flagship_key) for year in sorted(grouped[key])]
        for key in sorted(grouped)
    }


def flagship_trend(records, pack, seed, samples, workers=1):
    """
    Flagship time series with a Monte Carlo estimate and metrics per flagship.

    Records lacking their designated benchmark score are skipped before
    flagship selection; each skip leaves a diagnostic.
    """
    if not records:
        raise AnalysisInputError("The processor dataset has no records")

    scored, diagnostics = [], []
    for record in records:
        score, source = performance_score(record)
        if score is None:
            diagnostics.append(f"{record.name}: no {source} score, skipped")
        else:
            scored.append(record)

    rows = []
    for (vendor, segment, kind), flagships in select_flagships(scored).items():
        for record in flagships:
            estimate, resolved = estimate_record(record, pack, seed, samples, workers=workers)
            metrics = build_metric_row(record, estimate)
            rows.append(TrendRow(
                vendor=vendor,
                segment=segment,
                kind=kind,
                release_year=record.release_year,
                name=record.name,
                node_nm=record.node_nm,
                die_area_mm2=record.die_area_mm2,
                tdp_w=record.tdp_w,
                performance_score=metrics.performance_score,
                performance_source=metrics.performance_source,
                total_cfp_kg=metrics.total_cfp_kg,
                embodied_cfp_kg=metrics.embodied_cfp_kg,
                operational_cfp_kg=metrics.operational_cfp_kg,
                perf_per_cfp=metrics.perf_per_cfp,
                ecfpa_kg_per_cm2=metrics.ecfpa_kg_per_cm2,
                perf_per_ecfpa=metrics.perf_per_ecfpa,
                extrapolated=resolved.extrapolated,
            ))

    for diagnostic in diagnostics:
        logger.warning(diagnostic)
    return TrendReport(
        rows=tuple(rows), diagnostics=tuple(diagnostics), skipped_count=len(diagnostics)
    )
