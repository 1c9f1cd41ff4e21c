"""
Dataset Models

Immutable records loaded from the reference inputs:
- ProcessorRecord: one row of processors.csv
- RevenueRecord: one row of revenue.csv
- NodeEntry / GlobalParameters / NodeParameterPack: pack.json
"""

from dataclasses import dataclass, field

from apps.carbon import calculator
from apps.carbon.models import DieSpec, PackageSpec, UsageProfile
from apps.stochastic.models import StochasticInputs

KIND_CHOICES = ('cpu', 'gpu')
SEGMENT_CHOICES = ('desktop', 'datacenter')


def format_node(node_nm):
    """Canonical pack key for a node: 7.0 -> '7', 5.5 -> '5.5'."""
    return f"{node_nm:g}"


@dataclass(frozen=True)
class ProcessorRecord:
    name: str
    vendor: str
    kind: str
    segment: str
    release_year: int
    node_nm: float
    die_area_mm2: float
    tdp_w: float
    chiplet_count: int = 1
    transistor_millions: float | None = None
    price_usd: float | None = None
    perf_opencl: float | None = None
    perf_passmark: float | None = None
    perf_peak_tflops: float | None = None

    def dies(self):
        """Chiplet records split their total area equally across dies on one node."""
        area = self.die_area_mm2 / self.chiplet_count
        transistors = None
        if self.transistor_millions is not None:
            transistors = self.transistor_millions / self.chiplet_count
        die = DieSpec(area_mm2=area, node_nm=self.node_nm, transistor_count_millions=transistors)
        return (die,) * self.chiplet_count

    @property
    def group_key(self):
        return (self.vendor, self.segment, self.kind)


@dataclass(frozen=True)
class RevenueRecord:
    year: int
    revenue_usd: float
    flagship_name: str
    unit_price_usd: float


@dataclass(frozen=True)
class NodeEntry:
    """Parameters of one process node. Distributions are stochastic Distribution objects."""

    node_nm: float
    defect_density_per_cm2: object
    epa_kwh_per_cm2: object
    gpa_kg_per_cm2: object
    materials_kg_per_cm2: float
    packaging_carbon_kg_per_cm2: float
    packaging_overhead_factors: dict = field(default_factory=lambda: {1: 1.0})
    manufacturing_cost_usd_per_cm2: float | None = None
    packaging_yield: float = 1.0
    clustering_alpha: float = 2.0
    extrapolated: bool = False

    def overhead_factor(self, die_count):
        return calculator.interpolate_overhead_factor(self.packaging_overhead_factors, die_count)


@dataclass(frozen=True)
class GlobalParameters:
    fab_carbon_intensity_kg_per_kwh: object
    use_carbon_intensity_kg_per_kwh: float
    design: object
    usage: UsageProfile
    end_of_life_kg_per_package: float = 0.0


@dataclass(frozen=True)
class NodeParameterPack:
    nodes: dict
    global_params: GlobalParameters
    description: str = ''

    @property
    def node_list(self):
        return sorted(self.nodes)

    def entry(self, node_nm):
        """Listed entry for `node_nm`, or None."""
        return self.nodes.get(float(node_nm))

    def package_for(self, dies, entry):
        """PackageSpec of `dies` using the packaging parameters of `entry`."""
        dies = tuple(dies)
        return PackageSpec(
            dies=dies,
            packaging_overhead_factor=entry.overhead_factor(len(dies)),
            packaging_carbon_kg_per_cm2=entry.packaging_carbon_kg_per_cm2,
            packaging_yield=entry.packaging_yield,
            end_of_life_kg=self.global_params.end_of_life_kg_per_package,
        )

    def inputs_for(self, entry):
        return StochasticInputs(
            defect_density_per_cm2=entry.defect_density_per_cm2,
            epa_kwh_per_cm2=entry.epa_kwh_per_cm2,
            gpa_kg_per_cm2=entry.gpa_kg_per_cm2,
            fab_carbon_intensity_kg_per_kwh=self.global_params.fab_carbon_intensity_kg_per_kwh,
            materials_kg_per_cm2=entry.materials_kg_per_cm2,
            clustering_alpha=entry.clustering_alpha,
        )

    def usage_profile(self, lifetime_years=None, idle_fraction=None):
        """Pack usage profile, optionally overriding lifetime or idle fraction."""
        usage = self.global_params.usage
        return UsageProfile(
            lifetime_years=usage.lifetime_years if lifetime_years is None else lifetime_years,
            idle_fraction=usage.idle_fraction if idle_fraction is None else idle_fraction,
            use_carbon_intensity_kg_per_kwh=self.global_params.use_carbon_intensity_kg_per_kwh,
        )
