"""
Embodied versus operational carbon across lifetime and idle time.

    python manage.py amortize
    python manage.py amortize --processor "H100-SXM" --lifetimes 1,2,3,4 --idles 0,0.5,0.9
"""

from apps.analyses.amortization import (
    DEFAULT_IDLE_FRACTIONS,
    DEFAULT_LIFETIMES_YEARS,
    amortization_grid,
)
from apps.analyses.estimation import point_breakdown
from apps.analyses.serializers import AmortizationRowSerializer, BreakEvenRowSerializer
from apps.core.commands import CarbonCommand, float_list
from apps.dataset.loaders import find_processor

DEFAULT_PROCESSOR = 'A100-SXM'


class Command(CarbonCommand):
    help = "Build the ECFP/OCFP amortization grid of a processor"
    command_name = 'amortize'
    stochastic = False

    def add_command_arguments(self, parser):
        parser.add_argument('--processor', default=DEFAULT_PROCESSOR, help="processor name")
        parser.add_argument('--lifetimes', type=float_list, default=list(DEFAULT_LIFETIMES_YEARS),
                            help="comma-separated lifetimes in years")
        parser.add_argument('--idles', type=float_list, default=list(DEFAULT_IDLE_FRACTIONS),
                            help="comma-separated idle fractions")

    def run(self, options):
        record = find_processor(self.load_records(options), options['processor'])
        pack = self.load_pack(options)
        breakdown, resolved = point_breakdown(record, pack)
        grid = amortization_grid(
            record,
            breakdown.embodied_kg,
            record.tdp_w,
            options['lifetimes'],
            options['idles'],
            pack.global_params.use_carbon_intensity_kg_per_kwh,
            extrapolated=resolved.extrapolated,
        )
        for row in grid.break_even:
            years = row.break_even_lifetime_years
            self.stdout.write(
                f"idle {row.idle_fraction:.0%}: break-even "
                f"{'beyond axis' if years is None else f'{years:g} years'}"
            )

        metadata = {
            'processor': record.name,
            'embodied_cfp_kg': grid.embodied_cfp_kg,
            'tdp_w': grid.tdp_w,
            'use_carbon_intensity_kg_per_kwh': grid.use_carbon_intensity_kg_per_kwh,
            'extrapolated': grid.extrapolated,
        }
        self.writer.write_report(
            'amortization',
            {
                'rows': (AmortizationRowSerializer, list(grid.rows())),
                'break_even': (BreakEvenRowSerializer, grid.break_even),
            },
            metadata=metadata,
        )
        return {
            'processor': record.name,
            'lifetimes_years': list(grid.lifetimes),
            'idle_fractions': list(grid.idles),
        }
