"""
Analysis Reports

Row and report value objects produced by the case-study analyses.
Row field names are also the report column names.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ChipletSweepRow:
    total_area_mm2: float
    chiplet_count: int
    die_area_mm2: float
    manufacturing_kg: float
    packaging_kg: float
    manufacturing_plus_packaging_cfp_kg: float
    normalized_to_reference: float | None
    is_optimal: bool
    extrapolated: bool


@dataclass(frozen=True)
class ChipletSweepReport:
    node_nm: float
    rows: tuple
    extrapolated: bool = False
    reference_name: str | None = None
    reference_chiplet_count: int | None = None

    def optimal_counts(self):
        """{total_area_mm2: optimal chiplet count} in sweep order."""
        return {row.total_area_mm2: row.chiplet_count for row in self.rows if row.is_optimal}


@dataclass(frozen=True)
class AmortizationRow:
    idle_fraction: float
    lifetime_years: float
    embodied_cfp_kg: float
    operational_cfp_kg: float
    ratio: float | None
    unbounded: bool
    extrapolated: bool


@dataclass(frozen=True)
class BreakEvenRow:
    idle_fraction: float
    break_even_lifetime_years: float | None
    exact_break_even_years: float | None


@dataclass(frozen=True)
class AmortizationGrid:
    """
    ECFP/OCFP ratios; `ratios[i][j]` is idle `idles[i]` at lifetime
    `lifetimes[j]`, None where OCFP is zero. `operational` has the same shape.
    """

    processor_name: str
    embodied_cfp_kg: float
    tdp_w: float
    use_carbon_intensity_kg_per_kwh: float
    lifetimes: tuple
    idles: tuple
    operational: tuple
    ratios: tuple
    break_even: tuple
    extrapolated: bool = False

    def ratio(self, idle_fraction, lifetime_years):
        return self.ratios[self.idles.index(idle_fraction)][self.lifetimes.index(lifetime_years)]

    def break_even_for(self, idle_fraction):
        return self.break_even[self.idles.index(idle_fraction)]

    def rows(self):
        for i, idle in enumerate(self.idles):
            for j, lifetime in enumerate(self.lifetimes):
                ratio = self.ratios[i][j]
                yield AmortizationRow(
                    idle_fraction=idle,
                    lifetime_years=lifetime,
                    embodied_cfp_kg=self.embodied_cfp_kg,
                    operational_cfp_kg=self.operational[i][j],
                    ratio=ratio,
                    unbounded=ratio is None,
                    extrapolated=self.extrapolated,
                )


@dataclass(frozen=True)
class ShipmentRow:
    year: int
    revenue_usd: float
    flagship_name: str
    unit_price_usd: float
    units: int
    per_chip_cfp_kg: float
    total_cfp_kg: float
    peak_tflops: float | None
    peak_tflops_per_cfp: float | None
    normalized_units: float | None
    normalized_per_chip_cfp: float | None
    normalized_total_cfp: float | None
    normalized_peak_tflops_per_cfp: float | None
    extrapolated: bool


@dataclass(frozen=True)
class ShipmentReport:
    rows: tuple
    profit_margin: float
    lifetime_years: float
    idle_fraction: float
    diagnostics: tuple = ()

    @property
    def final(self):
        return self.rows[-1]


@dataclass(frozen=True)
class CostRow:
    name: str
    node_nm: float
    die_area_mm2: float
    manufacturing_cost_usd: float
    embodied_cfp_kg: float
    price_usd: float | None
    extrapolated: bool


@dataclass(frozen=True)
class NodeDivergenceRow:
    node_nm: float
    record_count: int
    cost_usd_per_cm2: float
    ecfpa_kg_per_cm2: float
    normalized_cost: float | None
    normalized_ecfpa: float | None
    divergence: float | None
    extrapolated: bool


@dataclass(frozen=True)
class CorrelationSummary:
    series: str
    row_count: int
    spearman: float | None
    pearson: float | None


@dataclass(frozen=True)
class CostCarbonReport:
    rows: tuple
    nodes: tuple
    cost: CorrelationSummary
    price: CorrelationSummary
    skipped_count: int = 0

    @property
    def spearman(self):
        return self.cost.spearman

    @property
    def pearson(self):
        return self.cost.pearson


@dataclass(frozen=True)
class TrendRow:
    vendor: str
    segment: str
    kind: str
    release_year: int
    name: str
    node_nm: float
    die_area_mm2: float
    tdp_w: float
    performance_score: float | None
    performance_source: str
    total_cfp_kg: float
    embodied_cfp_kg: float
    operational_cfp_kg: float
    perf_per_cfp: float | None
    ecfpa_kg_per_cm2: float
    perf_per_ecfpa: float | None
    extrapolated: bool


@dataclass(frozen=True)
class TrendReport:
    rows: tuple
    diagnostics: tuple = field(default_factory=tuple)
    skipped_count: int = 0

    def series(self, vendor, segment, kind):
        return [row for row in self.rows if (row.vendor, row.segment, row.kind) == (vendor, segment, kind)]


@dataclass(frozen=True)
class EstimateRow:
    name: str
    node_nm: float
    chiplet_count: int
    sample_count: int
    mean_kg: float
    stddev_kg: float
    p5_kg: float
    p25_kg: float
    p50_kg: float
    p75_kg: float
    p95_kg: float
    design_kg: float
    manufacturing_kg: float
    packaging_kg: float
    embodied_kg: float
    operational_kg: float
    rejected_count: int
    extrapolated: bool

    @classmethod
    def from_estimate(cls, record, estimate, extrapolated=False):
        breakdown = estimate.mean_breakdown
        return cls(
            name=record.name,
            node_nm=record.node_nm,
            chiplet_count=record.chiplet_count,
            sample_count=estimate.sample_count,
            mean_kg=estimate.mean_kg,
            stddev_kg=estimate.stddev_kg,
            p5_kg=estimate.quantile(5),
            p25_kg=estimate.quantile(25),
            p50_kg=estimate.quantile(50),
            p75_kg=estimate.quantile(75),
            p95_kg=estimate.quantile(95),
            design_kg=breakdown.design_kg,
            manufacturing_kg=breakdown.manufacturing_kg,
            packaging_kg=breakdown.packaging_kg,
            embodied_kg=breakdown.embodied_kg,
            operational_kg=breakdown.operational_kg,
            rejected_count=estimate.rejected_count,
            extrapolated=extrapolated,
        )


@dataclass(frozen=True)
class OverlapRow:
    processor_a: str
    processor_b: str
    overlap: float
