"""
Carbon Calculator

Deterministic lifecycle carbon math for one concrete draw of every
parameter: die yield, carbon per unit area, and the design, manufacturing,
packaging and operational stages.

The vectorisable helpers accept floats or numpy arrays alike, so the Monte
Carlo engine evaluates whole sample batches through exactly the same
expressions as the scalar operations below.
"""

import math

import numpy as np

from apps.core.exceptions import DomainError

from .models import HOURS_PER_YEAR, CarbonBreakdown, UsageProfile

WATTS_PER_KILOWATT = 1000.0


def _one(value):
    """Wrap a scalar as a one-element batch so scalar and batch paths share ufunc loops."""
    return np.array([value], dtype=float)


# Vectorisable helpers (callers validate) -------------------------------------


def negative_binomial_yield(area_cm2, defect_density, alpha):
    """(1 + A*D0/alpha)^-alpha, evaluated through log1p for accuracy."""
    return np.exp(-alpha * np.log1p(area_cm2 * defect_density / alpha))


def cfpa(fab_carbon_intensity, epa, gpa, materials, die_yield):
    return (fab_carbon_intensity * epa + gpa + materials) / die_yield


def die_manufacturing(area_cm2, defect_density, epa, gpa, materials, fab_ci, alpha):
    die_yield = negative_binomial_yield(area_cm2, defect_density, alpha)
    return area_cm2 * cfpa(fab_ci, epa, gpa, materials, die_yield)


def package_manufacturing(pkg, defect_density, epa, gpa, materials, fab_ci, alpha):
    """Sum of per-die manufacturing carbon, each die yielding on its own area."""
    total = 0.0
    for die in pkg.dies:
        total = total + die_manufacturing(
            die.area_cm2, defect_density, epa, gpa, materials, fab_ci, alpha
        )
    return total


# Validated operations --------------------------------------------------------


def _sample_batch(sample):
    return (
        _one(sample.defect_density_per_cm2),
        _one(sample.epa_kwh_per_cm2),
        _one(sample.gpa_kg_per_cm2),
        _one(sample.materials_kg_per_cm2),
        _one(sample.fab_carbon_intensity_kg_per_kwh),
        _one(sample.clustering_alpha),
    )


def yield_rate(area_cm2, defect_density_per_cm2, clustering_alpha):
    """
    Negative-binomial die yield.

    Returns a fraction in (0, 1]; exactly 1 when area * D0 == 0.
    """
    for name, value in (('area_cm2', area_cm2), ('defect_density_per_cm2', defect_density_per_cm2)):
        if not (math.isfinite(value) and value >= 0):
            raise DomainError(f"{name} must be finite and >= 0, got {value}")
    if not (math.isfinite(clustering_alpha) and clustering_alpha > 0):
        raise DomainError(f"clustering_alpha must be > 0, got {clustering_alpha}")
    return float(negative_binomial_yield(
        _one(area_cm2), _one(defect_density_per_cm2), _one(clustering_alpha)
    )[0])


def carbon_per_area(sample, die_yield):
    """
    Carbon per cm² of good silicon (kg CO2eq/cm²).

    The whole numerator, materials included, is divided by yield.
    """
    if not (math.isfinite(die_yield) and 0 < die_yield <= 1):
        raise DomainError(f"yield must be in (0, 1], got {die_yield}")
    return float(cfpa(
        sample.fab_carbon_intensity_kg_per_kwh,
        sample.epa_kwh_per_cm2,
        sample.gpa_kg_per_cm2,
        sample.materials_kg_per_cm2,
        die_yield,
    ))


def manufacturing_cfp(die, sample):
    """Manufacturing carbon of one die (kg CO2eq)."""
    return float(die_manufacturing(die.area_cm2, *_sample_batch(sample))[0])


def design_cfp(dies, params):
    """Design carbon amortized over the production volume (kg CO2eq)."""
    area_mm2 = sum(die.area_mm2 for die in dies)
    return (
        area_mm2
        * params.design_energy_kwh_per_mm2
        * params.design_carbon_intensity_kg_per_kwh
        / params.amortization_volume_units
    )


def packaging_cfp(pkg):
    """
    Packaging carbon (kg CO2eq): total silicon area scaled by the die-count
    overhead factor, divided by packaging yield, plus the end-of-life term.
    """
    if not pkg.packaging_yield > 0:
        raise DomainError(f"packaging_yield must be > 0, got {pkg.packaging_yield}")
    area_cm2 = sum(die.area_cm2 for die in pkg.dies)
    return (
        area_cm2
        * pkg.packaging_overhead_factor
        * pkg.packaging_carbon_kg_per_cm2
        / pkg.packaging_yield
        + pkg.end_of_life_kg
    )


def embodied_cfp(pkg, sample, design):
    """Design + manufacturing + packaging, with operational set to zero."""
    manufacturing_kg = float(package_manufacturing(pkg, *_sample_batch(sample))[0])
    return CarbonBreakdown.compose(
        design_cfp(pkg.dies, design), manufacturing_kg, packaging_cfp(pkg)
    )


def operational_cfp(tdp_w, usage):
    """
    Use-phase carbon (kg CO2eq). Active hours draw full TDP; idle hours
    draw nothing.
    """
    if not (math.isfinite(tdp_w) and tdp_w > 0):
        raise DomainError(f"tdp_w must be > 0, got {tdp_w}")
    return (
        tdp_w
        * usage.lifetime_years
        * HOURS_PER_YEAR
        * (1.0 - usage.idle_fraction)
        / WATTS_PER_KILOWATT
        * usage.use_carbon_intensity_kg_per_kwh
    )


def annual_operational_cfp(tdp_w, idle_fraction, use_carbon_intensity):
    """Operational carbon of one year of service (kg CO2eq/year)."""
    return operational_cfp(tdp_w, UsageProfile(
        lifetime_years=1.0,
        idle_fraction=idle_fraction,
        use_carbon_intensity_kg_per_kwh=use_carbon_intensity,
    ))


def total_cfp(pkg, sample, design, tdp_w, usage):
    """Embodied plus operational carbon."""
    embodied = embodied_cfp(pkg, sample, design)
    return embodied.with_operational(operational_cfp(tdp_w, usage))


def interpolate_overhead_factor(factors, die_count):
    """
    Packaging overhead factor for `die_count` dies.

    `factors` maps listed die counts to factors and must include 1.
    Counts between listed ones interpolate linearly; counts beyond the
    largest listed one extend the last segment.
    """
    if die_count < 1:
        raise DomainError(f"die_count must be >= 1, got {die_count}")
    counts = sorted(factors)
    if not counts or counts[0] != 1:
        raise DomainError("Packaging overhead factors must list die count 1")
    if die_count in factors:
        return float(factors[die_count])
    if len(counts) == 1:
        return float(factors[1])
    if die_count > counts[-1]:
        lo, hi = counts[-2], counts[-1]
        slope = (factors[hi] - factors[lo]) / (hi - lo)
        return float(factors[hi] + slope * (die_count - hi))
    return float(np.interp(die_count, counts, [factors[c] for c in counts]))
