"""
Monte Carlo carbon estimate of one or more processors.

    python manage.py estimate A100-SXM
    python manage.py estimate "Xeon Platinum 8380" "EPYC 7763" --format csv
    python manage.py estimate --where vendor=NVIDIA --where segment=datacenter
"""

from dataclasses import fields

from apps.analyses.estimation import estimate_record
from apps.analyses.models import EstimateRow, OverlapRow
from apps.analyses.serializers import EstimateRowSerializer, OverlapRowSerializer
from apps.core.commands import CarbonCommand
from apps.core.exceptions import AnalysisInputError
from apps.dataset.loaders import find_processor
from apps.dataset.models import ProcessorRecord
from apps.stochastic.engine import overlap

RECORD_FIELDS = {field.name: field.type for field in fields(ProcessorRecord)}


def parse_filter(text):
    key, separator, value = text.partition('=')
    key = key.strip()
    if not separator or key not in RECORD_FIELDS:
        raise AnalysisInputError(
            f"Invalid filter '{text}': expected key=value with key one of "
            f"{', '.join(RECORD_FIELDS)}"
        )
    return key, value.strip()


def matches(record, key, value):
    actual = getattr(record, key)
    if actual is None:
        return value == ''
    if isinstance(actual, str):
        return actual == value
    try:
        return float(actual) == float(value)
    except ValueError:
        return False


def select_records(records, names, filters):
    """Named records first, in the given order, then every record passing all filters."""
    if not names and not filters:
        raise AnalysisInputError("Name at least one processor or pass --where key=value")
    selected = [find_processor(records, name) for name in names]
    if filters:
        parsed = [parse_filter(text) for text in filters]
        for record in records:
            if record not in selected and all(matches(record, k, v) for k, v in parsed):
                selected.append(record)
    if not selected:
        raise AnalysisInputError("No processor matches the given filters")
    return selected


class Command(CarbonCommand):
    help = "Estimate the lifecycle carbon distribution of processors"
    command_name = 'estimate'

    def add_command_arguments(self, parser):
        parser.add_argument('processors', nargs='*', help="processor names")
        parser.add_argument('--where', action='append', default=[], metavar='KEY=VALUE',
                            help="select records whose field equals the value (repeatable)")
        parser.add_argument('--include-samples', action='store_true',
                            help="keep per-sample totals in the JSON report")
        parser.add_argument('--lifetime', type=float, default=None,
                            help="service lifetime in years (default: pack)")
        parser.add_argument('--idle', type=float, default=None,
                            help="idle fraction in [0, 1] (default: pack)")

    def run(self, options):
        records = self.load_records(options)
        pack = self.load_pack(options)
        selected = select_records(records, options['processors'], options['where'])
        usage = pack.usage_profile(options['lifetime'], options['idle'])
        retain = options['include_samples'] or len(selected) == 2

        estimates, rows, warnings = [], [], {}
        for record in selected:
            estimate, resolved = estimate_record(
                record,
                pack,
                options['seed'],
                options['samples'],
                usage=usage,
                workers=options['workers'],
                retain_samples=retain,
            )
            estimates.append(estimate)
            rows.append(EstimateRow.from_estimate(record, estimate, resolved.extrapolated))
            if estimate.warnings:
                warnings[record.name] = list(estimate.warnings)
            self.stdout.write(
                f"{record.name}: mean {estimate.mean_kg:.2f} kg CO2eq "
                f"(p5 {estimate.quantile(5):.2f}, p95 {estimate.quantile(95):.2f})"
            )

        tables = {'rows': (EstimateRowSerializer, rows)}
        if len(selected) == 2:
            coefficient = overlap(estimates[0], estimates[1])
            tables['overlap'] = (
                OverlapRowSerializer,
                [OverlapRow(selected[0].name, selected[1].name, coefficient)],
            )
            self.stdout.write(f"overlap: {coefficient:.4f}")

        extra = {}
        if options['include_samples']:
            extra['samples'] = {
                record.name: [float(value) for value in estimate.samples]
                for record, estimate in zip(selected, estimates)
            }
        metadata = {
            'lifetime_years': usage.lifetime_years,
            'idle_fraction': usage.idle_fraction,
            'use_carbon_intensity_kg_per_kwh': usage.use_carbon_intensity_kg_per_kwh,
            'warnings': warnings,
        }
        self.writer.write_report('estimate', tables, metadata=metadata, extra=extra)
        return {
            'processors': [record.name for record in selected],
            'where': sorted(options['where']),
            'include_samples': options['include_samples'],
            'lifetime_years': usage.lifetime_years,
            'idle_fraction': usage.idle_fraction,
        }
