"""
Chiplet versus monolithic sweep.

    python manage.py sweep_chiplets
    python manage.py sweep_chiplets --node 5 --areas 100,400,800 --counts 1,2,4
    python manage.py sweep_chiplets --processor "EPYC 7763"
"""

from apps.analyses.chiplets import DEFAULT_AREAS_MM2, DEFAULT_CHIPLET_COUNTS, chiplet_sweep
from apps.analyses.serializers import ChipletSweepRowSerializer
from apps.core.commands import CarbonCommand, float_list, int_list
from apps.dataset.extrapolation import extrapolate_node
from apps.dataset.loaders import find_processor

DEFAULT_NODE_NM = 7.0


class Command(CarbonCommand):
    help = "Compare manufacturing plus packaging carbon across chiplet counts"
    command_name = 'sweep_chiplets'
    stochastic = False

    def add_command_arguments(self, parser):
        parser.add_argument('--node', type=float, default=DEFAULT_NODE_NM,
                            help="process node in nm")
        parser.add_argument('--areas', type=float_list, default=list(DEFAULT_AREAS_MM2),
                            help="comma-separated total areas in mm²")
        parser.add_argument('--counts', type=int_list, default=list(DEFAULT_CHIPLET_COUNTS),
                            help="comma-separated chiplet counts (must include 1)")
        parser.add_argument('--processor', default=None,
                            help="sweep this processor's total area on its node, "
                                 "normalized to its own chiplet count")

    def run(self, options):
        pack = self.load_pack(options)
        areas, node_nm = options['areas'], options['node']
        reference_count = reference_name = None
        if options['processor']:
            record = find_processor(self.load_records(options), options['processor'])
            areas, node_nm = [record.die_area_mm2], record.node_nm
            reference_count, reference_name = record.chiplet_count, record.name

        entry = extrapolate_node(pack, node_nm)
        report = chiplet_sweep(
            areas,
            options['counts'],
            entry,
            pack,
            reference_count=reference_count,
            reference_name=reference_name,
        )
        for area, count in report.optimal_counts().items():
            self.stdout.write(f"{area:g} mm²: optimal chiplet count {count}")

        metadata = {
            'node_nm': report.node_nm,
            'extrapolated': report.extrapolated,
            'reference_name': reference_name,
            'reference_chiplet_count': reference_count,
        }
        self.writer.write_report(
            'chiplet_sweep', {'rows': (ChipletSweepRowSerializer, report.rows)}, metadata=metadata
        )
        return {
            'node_nm': node_nm,
            'areas_mm2': sorted(set(areas)),
            'counts': sorted(set(options['counts'])),
            'processor': options['processor'],
        }
