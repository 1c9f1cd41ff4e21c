"""
Node Extrapolation

Parameters for process nodes missing from a pack are scaled from the two
listed nodes nearest in log(node) space. Every parameter is interpolated
or extrapolated geometrically: log(value) is linear in log(node).
"""

import logging
import math

from apps.core.exceptions import DomainError, ParameterPackError

from .models import NodeEntry, format_node

logger = logging.getLogger(__name__)


def log_log(x1, v1, x2, v2, x):
    """
    Value at node `x` on the log-log line through (x1, v1) and (x2, v2).

    Equal values stay constant. A non-positive value has no logarithm,
    so such pairs are interpolated linearly in log(node) instead.
    """
    if v1 == v2:
        return v1
    t = (math.log(x) - math.log(x1)) / (math.log(x2) - math.log(x1))
    if v1 > 0 and v2 > 0:
        return v1 * (v2 / v1) ** t
    return v1 + (v2 - v1) * t


def nearest_nodes(node_list, target_nm):
    """The two listed nodes closest to `target_nm` in log distance; ties prefer the smaller."""
    ranked = sorted(
        node_list,
        key=lambda node_nm: (abs(math.log(node_nm) - math.log(target_nm)), node_nm),
    )
    return ranked[0], ranked[1]


def _extrapolate_distribution(near, far, x1, x2, target):
    location = max(0.0, log_log(x1, near.location, x2, far.location, target))
    scale = log_log(x1, near.scale, x2, far.scale, target)
    if not scale > 0:
        scale = near.scale
    return near.with_location_scale(location, scale)


def _extrapolate_factors(near, far, x1, x2, target):
    shared = sorted(set(near) & set(far))
    dropped = sorted(set(near) ^ set(far))
    if dropped:
        logger.warning(
            f"Node {format_node(target)} nm: packaging overhead for die counts "
            f"{', '.join(map(str, dropped))} is listed by only one of "
            f"{format_node(x1)} nm and {format_node(x2)} nm and is dropped"
        )
    return {
        count: max(0.0, log_log(x1, near[count], x2, far[count], target))
        for count in shared
    }


def extrapolate_node(pack, target_nm):
    """
    Node entry for `target_nm`, flagged `extrapolated` unless listed.

    A listed node is returned unchanged. Otherwise every scalar and each
    distribution's location and scale come from the two nearest nodes;
    distribution families and KDE observation shapes follow the nearest.
    """
    if not (math.isfinite(target_nm) and target_nm > 0):
        raise DomainError(f"Target node must be > 0 nm, got {target_nm}")
    listed = pack.entry(target_nm)
    if listed is not None:
        return listed
    if len(pack.nodes) < 2:
        raise ParameterPackError(
            f"Cannot extrapolate node {format_node(target_nm)} nm: "
            f"the pack lists {len(pack.nodes)} node(s), at least 2 are needed"
        )

    x1, x2 = nearest_nodes(pack.node_list, target_nm)
    near, far = pack.nodes[x1], pack.nodes[x2]

    def scalar(name):
        return max(0.0, log_log(x1, getattr(near, name), x2, getattr(far, name), target_nm))

    def distribution(name):
        return _extrapolate_distribution(
            getattr(near, name), getattr(far, name), x1, x2, target_nm
        )

    cost = None
    if near.manufacturing_cost_usd_per_cm2 is not None and far.manufacturing_cost_usd_per_cm2 is not None:
        cost = scalar('manufacturing_cost_usd_per_cm2')

    packaging_yield = scalar('packaging_yield')
    if not 0 < packaging_yield <= 1:
        packaging_yield = near.packaging_yield
    alpha = scalar('clustering_alpha')
    if not alpha > 0:
        alpha = near.clustering_alpha

    logger.warning(
        f"Node {format_node(target_nm)} nm is not in the pack; "
        f"extrapolated from {format_node(x1)} nm and {format_node(x2)} nm"
    )
    return NodeEntry(
        node_nm=float(target_nm),
        defect_density_per_cm2=distribution('defect_density_per_cm2'),
        epa_kwh_per_cm2=distribution('epa_kwh_per_cm2'),
        gpa_kg_per_cm2=distribution('gpa_kg_per_cm2'),
        materials_kg_per_cm2=scalar('materials_kg_per_cm2'),
        packaging_carbon_kg_per_cm2=scalar('packaging_carbon_kg_per_cm2'),
        packaging_overhead_factors=_extrapolate_factors(
            near.packaging_overhead_factors, far.packaging_overhead_factors, x1, x2, target_nm
        ),
        manufacturing_cost_usd_per_cm2=cost,
        packaging_yield=min(1.0, packaging_yield),
        clustering_alpha=alpha,
        extrapolated=True,
    )
