"""
Fleet carbon of yearly datacenter GPU shipments.

    python manage.py shipments
    python manage.py shipments --revenue my_revenue.csv --samples 2000
"""

from django.conf import settings

from apps.analyses.serializers import ShipmentRowSerializer
from apps.analyses.shipments import aggregate_shipments
from apps.core.commands import CarbonCommand


class Command(CarbonCommand):
    help = "Aggregate shipment-driven total carbon per year"
    command_name = 'shipments'

    def add_command_arguments(self, parser):
        parser.add_argument('--revenue', default=str(settings.CARBON['REVENUE_PATH']),
                            help="revenue.csv path")

    def run(self, options):
        records = self.load_records(options)
        pack = self.load_pack(options)
        revenue = self.load_revenue(options)
        report = aggregate_shipments(revenue, records, pack, **self.monte_carlo_options(options))

        final = report.final
        if final.normalized_total_cfp is None:
            self.stdout.write(f"{final.year}: {final.total_cfp_kg:.3g} kg CO2eq total")
        else:
            self.stdout.write(
                f"{final.year}: {final.normalized_total_cfp:.1f}x total carbon, "
                f"{final.normalized_peak_tflops_per_cfp or 0:.1f}x TFLOPS per kg "
                f"vs {report.rows[0].year}"
            )
        metadata = {
            'profit_margin': report.profit_margin,
            'lifetime_years': report.lifetime_years,
            'idle_fraction': report.idle_fraction,
            'diagnostics': list(report.diagnostics),
        }
        self.writer.write_report(
            'shipments', {'rows': (ShipmentRowSerializer, report.rows)}, metadata=metadata
        )
        return {'years': [row.year for row in report.rows]}
