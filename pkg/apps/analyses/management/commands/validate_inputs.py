"""
Check the dataset, revenue file and parameter pack without running any
analysis.

    python manage.py validate_inputs
"""

from django.conf import settings

from apps.analyses.serializers import DiagnosticRowSerializer
from apps.core.commands import CarbonCommand
from apps.dataset.loaders import load_processors_file, load_revenue_file
from apps.dataset.models import format_node


class Command(CarbonCommand):
    help = "Validate input files and list rejected rows"
    command_name = 'validate_inputs'
    stochastic = False

    def add_command_arguments(self, parser):
        parser.add_argument('--revenue', default=str(settings.CARBON['REVENUE_PATH']),
                            help="revenue.csv path")

    def run(self, options):
        records, dataset_diagnostics = load_processors_file(options['dataset'])
        self.input_paths['dataset'] = options['dataset']
        revenue, revenue_diagnostics = load_revenue_file(options['revenue'])
        self.input_paths['revenue'] = options['revenue']
        pack = self.load_pack(options)

        rows = [
            {'source': 'dataset', 'row': d.row, 'message': d.message} for d in dataset_diagnostics
        ] + [
            {'source': 'revenue', 'row': d.row, 'message': d.message} for d in revenue_diagnostics
        ]
        for row in rows:
            self.stdout.write(f"{row['source']} row {row['row']}: {row['message']}")

        nodes = ', '.join(format_node(node_nm) for node_nm in pack.node_list)
        self.stdout.write(
            f"{len(records)} processors, {len(revenue)} revenue rows, "
            f"{len(rows)} rejected; pack nodes: {nodes}"
        )
        self.writer.write_report(
            'validation',
            {'rows': (DiagnosticRowSerializer, rows)},
            metadata={
                'processor_count': len(records),
                'revenue_count': len(revenue),
                'pack_nodes': [format_node(node_nm) for node_nm in pack.node_list],
            },
        )
        return {}
