"""
Cost versus Embodied Carbon

Compares the yield-adjusted manufacturing cost (and selling price) of
each processor with its embodied carbon, and traces how the two diverge
across process nodes.
"""

import logging
from collections import defaultdict

import numpy as np
from scipy import stats

from apps.carbon import calculator
from apps.carbon.models import MM2_PER_CM2
from apps.core.exceptions import AnalysisInputError
from apps.metrics.calculators import ecfpa, normalize_optional

from .estimation import estimate_resolved, record_inputs
from .models import CorrelationSummary, CostCarbonReport, CostRow, NodeDivergenceRow

logger = logging.getLogger(__name__)


def manufacturing_cost(package, entry):
    """Σ die cm² × node cost per cm² / die yield, with D0 at its mean."""
    defect_density = entry.defect_density_per_cm2.mean
    total = 0.0
    for die in package.dies:
        die_yield = calculator.yield_rate(die.area_cm2, defect_density, entry.clustering_alpha)
        total += die.area_cm2 * entry.manufacturing_cost_usd_per_cm2 / die_yield
    return total


def correlations(x, y):
    """
    (spearman, pearson) of two equal-length series.

    Either is None with fewer than 2 points or when a series is constant.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return None, None
    spearman = float(np.clip(stats.spearmanr(x, y)[0], -1.0, 1.0))
    pearson = float(np.clip(stats.pearsonr(x, y)[0], -1.0, 1.0))
    return spearman, pearson


def _ratio(numerator, denominator):
    if numerator is None or not denominator:
        return None
    return numerator / denominator


def node_divergence(rows):
    """
    Per-node mean cost and ECFPA per cm², largest node first, each
    normalized to the largest node. Divergence = normalized ECFPA /
    normalized cost. Normalized columns are empty when the largest
    node's mean is zero.
    """
    grouped = defaultdict(list)
    for row in rows:
        grouped[row.node_nm].append(row)
    nodes = sorted(grouped, reverse=True)
    cost_density, carbon_density, flags = [], [], []
    for node_nm in nodes:
        members = grouped[node_nm]
        cost_density.append(float(np.mean([
            row.manufacturing_cost_usd / (row.die_area_mm2 / MM2_PER_CM2) for row in members
        ])))
        carbon_density.append(float(np.mean([
            ecfpa(row.embodied_cfp_kg, row.die_area_mm2) for row in members
        ])))
        flags.append(any(row.extrapolated for row in members))

    normalized_cost = normalize_optional(cost_density)
    normalized_carbon = normalize_optional(carbon_density)
    if normalized_cost[0] is None:
        logger.warning(
            f"Node {nodes[0]:g} nm has zero manufacturing cost; normalized columns left empty"
        )
    return tuple(
        NodeDivergenceRow(
            node_nm=node_nm,
            record_count=len(grouped[node_nm]),
            cost_usd_per_cm2=cost_density[index],
            ecfpa_kg_per_cm2=carbon_density[index],
            normalized_cost=normalized_cost[index],
            normalized_ecfpa=normalized_carbon[index],
            divergence=_ratio(normalized_carbon[index], normalized_cost[index]),
            extrapolated=flags[index],
        )
        for index, node_nm in enumerate(nodes)
    )


def cost_ecfp_series(records, pack, seed, samples, workers=1):
    """
    Cost and embodied carbon of every costable record.

    Records whose node has no manufacturing cost are skipped and counted.
    """
    rows, skipped = [], 0
    for record in records:
        resolved = record_inputs(record, pack)
        if resolved.entry.manufacturing_cost_usd_per_cm2 is None:
            logger.debug(f"{record.name}: node {record.node_nm:g} nm has no cost, skipped")
            skipped += 1
            continue
        estimate = estimate_resolved(resolved, pack, seed, samples, workers=workers)
        rows.append(CostRow(
            name=record.name,
            node_nm=record.node_nm,
            die_area_mm2=record.die_area_mm2,
            manufacturing_cost_usd=manufacturing_cost(resolved.package, resolved.entry),
            embodied_cfp_kg=estimate.mean_breakdown.embodied_kg,
            price_usd=record.price_usd,
            extrapolated=resolved.extrapolated,
        ))

    if not rows:
        raise AnalysisInputError("No record has a manufacturing cost for its node")
    if skipped:
        logger.warning(f"{skipped} record(s) skipped for lack of a node manufacturing cost")

    cost_spearman, cost_pearson = correlations(
        [row.manufacturing_cost_usd for row in rows], [row.embodied_cfp_kg for row in rows]
    )
    priced = [row for row in rows if row.price_usd is not None]
    price_spearman, price_pearson = correlations(
        [row.price_usd for row in priced], [row.embodied_cfp_kg for row in priced]
    )
    return CostCarbonReport(
        rows=tuple(rows),
        nodes=node_divergence(rows),
        cost=CorrelationSummary('manufacturing_cost', len(rows), cost_spearman, cost_pearson),
        price=CorrelationSummary('price', len(priced), price_spearman, price_pearson),
        skipped_count=skipped,
    )
