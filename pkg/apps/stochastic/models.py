"""
Stochastic Models

- StochasticInputs: the uncertain parameter set of one process node
- CarbonEstimate: summary of a Monte Carlo run
"""

import math
from dataclasses import dataclass, field

import numpy as np

from apps.carbon.models import CarbonBreakdown, NodeSample
from apps.core.exceptions import InvariantViolation

# Order fixes the substream index of each sampled parameter.
SAMPLED_PARAMETERS = (
    'defect_density_per_cm2',
    'epa_kwh_per_cm2',
    'gpa_kg_per_cm2',
    'fab_carbon_intensity_kg_per_kwh',
)

QUANTILE_LEVELS = (5, 25, 50, 75, 95)


@dataclass(frozen=True)
class StochasticInputs:
    defect_density_per_cm2: object
    epa_kwh_per_cm2: object
    gpa_kg_per_cm2: object
    fab_carbon_intensity_kg_per_kwh: object
    materials_kg_per_cm2: float
    clustering_alpha: float = 2.0

    def distributions(self):
        return tuple(getattr(self, name) for name in SAMPLED_PARAMETERS)

    def mean_sample(self):
        """Every distribution collapsed to its mean."""
        return NodeSample(
            defect_density_per_cm2=self.defect_density_per_cm2.mean,
            epa_kwh_per_cm2=self.epa_kwh_per_cm2.mean,
            gpa_kg_per_cm2=self.gpa_kg_per_cm2.mean,
            materials_kg_per_cm2=self.materials_kg_per_cm2,
            fab_carbon_intensity_kg_per_kwh=self.fab_carbon_intensity_kg_per_kwh.mean,
            clustering_alpha=self.clustering_alpha,
        )


def stable_mean(values):
    """
    Mean taken around the first value with an exactly rounded sum, so a
    sample of identical values averages to that value exactly.
    """
    values = np.asarray(values, dtype=float)
    origin = float(values[0])
    return origin + math.fsum(values - origin) / values.size


def stable_stddev(values, mean):
    """Sample standard deviation (n - 1); 0 for a single value."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return 0.0
    return math.sqrt(math.fsum((values - mean) ** 2) / (values.size - 1))


@dataclass(frozen=True)
class CarbonEstimate:
    """Distribution summary of total lifecycle carbon (kg CO2eq)."""

    sample_count: int
    mean_kg: float
    stddev_kg: float
    quantiles: dict
    mean_breakdown: CarbonBreakdown
    rejected_count: int = 0
    warnings: tuple = ()
    samples: np.ndarray | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_samples(cls, totals, breakdown, rejected_count=0, warnings=(), retain_samples=False):
        """
        Summarize `totals`. `breakdown` holds the per-stage means; its
        total must agree with the sample mean.
        """
        totals = np.asarray(totals, dtype=float)
        mean = stable_mean(totals)
        levels = np.array(QUANTILE_LEVELS, dtype=float) / 100.0
        quantiles = {
            level: float(value)
            for level, value in zip(QUANTILE_LEVELS, np.quantile(totals, levels))
        }
        samples = None
        if retain_samples:
            samples = totals.copy()
            samples.setflags(write=False)
        estimate = cls(
            sample_count=int(totals.size),
            mean_kg=mean,
            stddev_kg=stable_stddev(totals, mean),
            quantiles=quantiles,
            mean_breakdown=breakdown,
            rejected_count=int(rejected_count),
            warnings=tuple(warnings),
            samples=samples,
        )
        estimate.check_invariants()
        return estimate

    @property
    def median_kg(self):
        return self.quantiles[50]

    def quantile(self, level):
        return self.quantiles[level]

    def check_invariants(self):
        ordered = [self.quantiles[level] for level in QUANTILE_LEVELS]
        if any(lo > hi for lo, hi in zip(ordered, ordered[1:])):
            raise InvariantViolation(f"Quantiles are not monotone: {ordered}")
        if self.stddev_kg < 0 or not math.isfinite(self.mean_kg):
            raise InvariantViolation("Estimate summary is not finite")
        if not self.mean_breakdown.is_additive():
            raise InvariantViolation("Mean breakdown is not additive")
        scale = max(abs(self.mean_kg), 1.0)
        if abs(self.mean_breakdown.total_kg - self.mean_kg) > 1e-9 * scale:
            raise InvariantViolation(
                f"Mean breakdown total {self.mean_breakdown.total_kg} "
                f"disagrees with sample mean {self.mean_kg}"
            )
