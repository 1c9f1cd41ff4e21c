"""
Carbon Models

Immutable value objects consumed by the calculator:
- DieSpec, PackageSpec: what is manufactured
- NodeSample: one concrete draw of every process-node parameter
- DesignParams, UsageProfile: design-stage and use-phase inputs
- CarbonBreakdown: per-stage result, exactly additive

Die areas are stored in mm²; per-area coefficients are per cm².
"""

import math
from dataclasses import dataclass

from apps.core.exceptions import DomainError

MM2_PER_CM2 = 100.0
HOURS_PER_YEAR = 8760.0


def _require(condition, message):
    if not condition:
        raise DomainError(message)


def _finite_nonneg(value):
    return math.isfinite(value) and value >= 0


@dataclass(frozen=True)
class DieSpec:
    area_mm2: float
    node_nm: float
    transistor_count_millions: float | None = None

    def __post_init__(self):
        # Zero area is accepted so degenerate sweeps evaluate to zero carbon.
        _require(_finite_nonneg(self.area_mm2), f"Die area must be >= 0, got {self.area_mm2}")
        _require(
            math.isfinite(self.node_nm) and self.node_nm > 0,
            f"Process node must be > 0, got {self.node_nm}",
        )
        if self.transistor_count_millions is not None:
            _require(
                _finite_nonneg(self.transistor_count_millions),
                "Transistor count must be >= 0",
            )

    @property
    def area_cm2(self):
        return self.area_mm2 / MM2_PER_CM2


@dataclass(frozen=True)
class NodeSample:
    defect_density_per_cm2: float
    epa_kwh_per_cm2: float
    gpa_kg_per_cm2: float
    materials_kg_per_cm2: float
    fab_carbon_intensity_kg_per_kwh: float
    clustering_alpha: float = 2.0

    def __post_init__(self):
        for name in (
            'defect_density_per_cm2',
            'epa_kwh_per_cm2',
            'gpa_kg_per_cm2',
            'materials_kg_per_cm2',
            'fab_carbon_intensity_kg_per_kwh',
        ):
            value = getattr(self, name)
            _require(_finite_nonneg(value), f"{name} must be finite and >= 0, got {value}")
        _require(
            math.isfinite(self.clustering_alpha) and self.clustering_alpha > 0,
            f"clustering_alpha must be > 0, got {self.clustering_alpha}",
        )


@dataclass(frozen=True)
class PackageSpec:
    dies: tuple
    packaging_overhead_factor: float = 1.0
    packaging_carbon_kg_per_cm2: float = 0.0
    packaging_yield: float = 1.0
    end_of_life_kg: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'dies', tuple(self.dies))
        _require(len(self.dies) > 0, "A package needs at least one die")
        _require(
            _finite_nonneg(self.packaging_overhead_factor),
            "packaging_overhead_factor must be >= 0",
        )
        _require(
            _finite_nonneg(self.packaging_carbon_kg_per_cm2),
            "packaging_carbon_kg_per_cm2 must be >= 0",
        )
        _require(
            math.isfinite(self.packaging_yield) and 0 < self.packaging_yield <= 1,
            f"packaging_yield must be in (0, 1], got {self.packaging_yield}",
        )
        _require(_finite_nonneg(self.end_of_life_kg), "end_of_life_kg must be >= 0")

    @classmethod
    def equal_split(cls, total_area_mm2, node_nm, count, **packaging):
        """Package of `count` equal dies sharing `total_area_mm2`."""
        _require(count >= 1, f"Chiplet count must be >= 1, got {count}")
        die = DieSpec(area_mm2=total_area_mm2 / count, node_nm=node_nm)
        return cls(dies=(die,) * count, **packaging)

    @property
    def die_count(self):
        return len(self.dies)

    @property
    def total_area_mm2(self):
        return sum(die.area_mm2 for die in self.dies)


@dataclass(frozen=True)
class DesignParams:
    design_energy_kwh_per_mm2: float = 0.0
    design_carbon_intensity_kg_per_kwh: float = 0.0
    amortization_volume_units: int = 1

    def __post_init__(self):
        _require(_finite_nonneg(self.design_energy_kwh_per_mm2), "design energy must be >= 0")
        _require(
            _finite_nonneg(self.design_carbon_intensity_kg_per_kwh),
            "design carbon intensity must be >= 0",
        )
        _require(
            int(self.amortization_volume_units) == self.amortization_volume_units
            and self.amortization_volume_units >= 1,
            "amortization_volume_units must be an integer >= 1",
        )


@dataclass(frozen=True)
class UsageProfile:
    lifetime_years: float = 3.0
    idle_fraction: float = 0.6
    use_carbon_intensity_kg_per_kwh: float = 0.0

    def __post_init__(self):
        _require(_finite_nonneg(self.lifetime_years), "lifetime_years must be >= 0")
        _require(
            math.isfinite(self.idle_fraction) and 0 <= self.idle_fraction <= 1,
            f"idle_fraction must be in [0, 1], got {self.idle_fraction}",
        )
        _require(
            _finite_nonneg(self.use_carbon_intensity_kg_per_kwh),
            "use_carbon_intensity_kg_per_kwh must be >= 0",
        )


@dataclass(frozen=True)
class CarbonBreakdown:
    """
    Lifecycle carbon per stage in kg CO2eq.

    Build instances with `compose` so that the derived totals are always
    the exact float sums of their parts.
    """

    design_kg: float
    manufacturing_kg: float
    packaging_kg: float
    embodied_kg: float
    operational_kg: float
    total_kg: float

    @classmethod
    def compose(cls, design_kg, manufacturing_kg, packaging_kg, operational_kg=0.0):
        embodied_kg = design_kg + manufacturing_kg + packaging_kg
        return cls(
            design_kg=design_kg,
            manufacturing_kg=manufacturing_kg,
            packaging_kg=packaging_kg,
            embodied_kg=embodied_kg,
            operational_kg=operational_kg,
            total_kg=embodied_kg + operational_kg,
        )

    @classmethod
    def zero(cls):
        return cls.compose(0.0, 0.0, 0.0, 0.0)

    def with_operational(self, operational_kg):
        return type(self).compose(
            self.design_kg, self.manufacturing_kg, self.packaging_kg, operational_kg
        )

    def is_additive(self):
        return (
            self.embodied_kg == self.design_kg + self.manufacturing_kg + self.packaging_kg
            and self.total_kg == self.embodied_kg + self.operational_kg
        )
