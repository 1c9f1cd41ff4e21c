"""
Record Estimation

Turns a ProcessorRecord into carbon-core inputs (package, node entry,
stochastic inputs) and evaluates it.
"""

import logging
from dataclasses import dataclass

from apps.dataset.extrapolation import extrapolate_node
from apps.stochastic.engine import point_estimate, run_monte_carlo

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecordInputs:
    record: object
    entry: object
    package: object
    inputs: object
    design: object

    @property
    def extrapolated(self):
        return self.entry.extrapolated


def record_inputs(record, pack):
    """Carbon-core inputs for `record`, extrapolating its node when unlisted."""
    entry = extrapolate_node(pack, record.node_nm)
    return RecordInputs(
        record=record,
        entry=entry,
        package=pack.package_for(record.dies(), entry),
        inputs=pack.inputs_for(entry),
        design=pack.global_params.design,
    )


def estimate_record(record, pack, seed, samples, usage=None, workers=1, retain_samples=False):
    """Monte Carlo estimate of `record`; returns (estimate, RecordInputs)."""
    resolved = record_inputs(record, pack)
    estimate = estimate_resolved(
        resolved, pack, seed, samples, usage=usage, workers=workers, retain_samples=retain_samples
    )
    return estimate, resolved


def estimate_resolved(resolved, pack, seed, samples, usage=None, workers=1, retain_samples=False):
    record = resolved.record
    usage = usage or pack.usage_profile()
    logger.debug(f"Estimating {record.name} at {resolved.entry.node_nm:g} nm, n={samples}")
    return run_monte_carlo(
        resolved.package,
        resolved.inputs,
        resolved.design,
        record.tdp_w,
        usage,
        n=samples,
        seed=seed,
        workers=workers,
        retain_samples=retain_samples,
    )


def point_breakdown(record, pack, usage=None):
    """Deterministic breakdown of `record` at distribution means."""
    resolved = record_inputs(record, pack)
    breakdown = point_estimate(
        resolved.package,
        resolved.inputs,
        resolved.design,
        record.tdp_w,
        usage or pack.usage_profile(),
    )
    return breakdown, resolved
