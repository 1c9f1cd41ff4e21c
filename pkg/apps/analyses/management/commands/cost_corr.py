"""
Manufacturing cost and selling price against embodied carbon.

    python manage.py cost_corr --format csv
"""

from apps.analyses.cost import cost_ecfp_series
from apps.analyses.serializers import (
    CorrelationSummarySerializer,
    CostRowSerializer,
    NodeDivergenceRowSerializer,
)
from apps.core.commands import CarbonCommand


def _describe(value):
    return 'undefined' if value is None else f"{value:+.3f}"


class Command(CarbonCommand):
    help = "Correlate manufacturing cost and price with embodied carbon"
    command_name = 'cost_corr'

    def run(self, options):
        records = self.load_records(options)
        pack = self.load_pack(options)
        report = cost_ecfp_series(records, pack, **self.monte_carlo_options(options))

        for summary in (report.cost, report.price):
            self.stdout.write(
                f"{summary.series} vs ECFP over {summary.row_count} rows: "
                f"spearman {_describe(summary.spearman)}, pearson {_describe(summary.pearson)}"
            )
        self.writer.write_report(
            'cost_correlation',
            {
                'rows': (CostRowSerializer, report.rows),
                'nodes': (NodeDivergenceRowSerializer, report.nodes),
                'summary': (CorrelationSummarySerializer, (report.cost, report.price)),
            },
            metadata={'skipped_count': report.skipped_count},
        )
        return {'processors': [row.name for row in report.rows]}
