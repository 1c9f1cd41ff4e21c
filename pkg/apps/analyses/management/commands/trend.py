"""
Flagship carbon and sustainability metrics over the years.

    python manage.py trend --samples 2000
"""

from apps.analyses.serializers import TrendRowSerializer
from apps.analyses.trends import flagship_trend
from apps.core.commands import CarbonCommand


class Command(CarbonCommand):
    help = "Report flagship carbon trends per vendor, segment and kind"
    command_name = 'trend'

    def run(self, options):
        records = self.load_records(options)
        pack = self.load_pack(options)
        report = flagship_trend(records, pack, **self.monte_carlo_options(options))

        self.stdout.write(
            f"{len(report.rows)} flagship rows, "
            f"{report.skipped_count} record(s) skipped without scores"
        )
        self.writer.write_report(
            'trend',
            {'rows': (TrendRowSerializer, report.rows)},
            metadata={
                'skipped_count': report.skipped_count,
                'diagnostics': list(report.diagnostics),
            },
        )
        return {}
