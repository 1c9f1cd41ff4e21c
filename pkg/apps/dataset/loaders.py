"""
Dataset Loaders

Parse and serialize processors.csv, revenue.csv and pack.json.

CSV rows that fail validation are dropped with a row-numbered
diagnostic; structural problems (missing columns, unreadable JSON, pack
schema violations) raise.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass

from apps.core.exceptions import (
    DatasetSchemaError,
    ParameterPackError,
    UnknownProcessorError,
    flatten_error_detail,
)
from apps.core.utils import closest_match, read_text

from .models import format_node
from .serializers import ParameterPackSerializer, ProcessorRecordSerializer, RevenueRecordSerializer

logger = logging.getLogger(__name__)

PROCESSOR_COLUMNS = (
    'name', 'vendor', 'kind', 'segment', 'release_year', 'node_nm',
    'die_area_mm2', 'transistor_millions', 'tdp_w', 'chiplet_count', 'price_usd',
    'perf_opencl', 'perf_passmark', 'perf_peak_tflops',
)
PROCESSOR_REQUIRED_COLUMNS = (
    'name', 'vendor', 'kind', 'segment', 'release_year',
    'node_nm', 'die_area_mm2', 'tdp_w',
)
REVENUE_COLUMNS = ('year', 'revenue_usd', 'flagship_name', 'unit_price_usd')


@dataclass(frozen=True)
class Diagnostic:
    """A rejected CSV row; `row` is the 1-based line number, header included."""

    row: int
    message: str

    def __str__(self):
        return f"row {self.row}: {self.message}"


def _check_header(fieldnames, columns, required, label):
    if fieldnames is None:
        raise DatasetSchemaError(f"{label} has no header row")
    header = [name.strip() for name in fieldnames]
    missing = [name for name in required if name not in header]
    if missing:
        raise DatasetSchemaError(f"{label} is missing required columns: {', '.join(missing)}")
    unknown = [name for name in header if name not in columns]
    if unknown:
        raise DatasetSchemaError(f"{label} has unknown columns: {', '.join(unknown)}")
    duplicated = sorted({name for name in header if header.count(name) > 1})
    if duplicated:
        raise DatasetSchemaError(f"{label} repeats columns: {', '.join(duplicated)}")
    return header


def _parse_rows(text, serializer_class, columns, required, label):
    reader = csv.reader(io.StringIO(text.lstrip('\ufeff')))
    fieldnames = next(reader, None)
    header = _check_header(fieldnames, columns, required, label)

    rows, diagnostics = [], []
    for row_number, cells in enumerate(reader, start=2):
        if not any(cell.strip() for cell in cells):
            continue
        if len(cells) != len(header):
            diagnostics.append(Diagnostic(
                row_number, f"expected {len(header)} cells, found {len(cells)}"
            ))
            continue
        # Empty cells mean "absent".
        data = {
            name: cell for name, cell in zip(header, cells) if cell.strip() != ''
        }
        serializer = serializer_class(data=data)
        if not serializer.is_valid():
            for message in flatten_error_detail(serializer.errors):
                diagnostics.append(Diagnostic(row_number, message))
            continue
        rows.append((row_number, serializer.save()))
    return rows, diagnostics


def _log_diagnostics(label, diagnostics):
    for diagnostic in diagnostics:
        logger.warning(f"{label}: {diagnostic}")


def parse_processors(text):
    """
    Parse processors.csv content.

    Returns (records, diagnostics). A repeated processor name keeps the
    first row and rejects the later ones.
    """
    parsed, diagnostics = _parse_rows(
        text, ProcessorRecordSerializer, PROCESSOR_COLUMNS, PROCESSOR_REQUIRED_COLUMNS,
        'processor dataset',
    )
    records, seen = [], set()
    for row_number, record in parsed:
        if record.name in seen:
            diagnostics.append(Diagnostic(row_number, f"name: duplicate processor '{record.name}'"))
            continue
        seen.add(record.name)
        records.append(record)
    diagnostics.sort(key=lambda diagnostic: diagnostic.row)
    _log_diagnostics('processor dataset', diagnostics)
    return records, diagnostics


def parse_revenue(text):
    """Parse revenue.csv content into (records, diagnostics)."""
    parsed, diagnostics = _parse_rows(
        text, RevenueRecordSerializer, REVENUE_COLUMNS, REVENUE_COLUMNS, 'revenue file'
    )
    _log_diagnostics('revenue file', diagnostics)
    return [record for _, record in parsed], diagnostics


def _write_rows(rows, columns):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: '' if value is None else value for key, value in row.items()})
    return buffer.getvalue()


def serialize_processors(records):
    """processors.csv text for `records`; reparsing yields equal records."""
    return _write_rows(
        (ProcessorRecordSerializer(record).data for record in records), PROCESSOR_COLUMNS
    )


def serialize_revenue(records):
    return _write_rows(
        (RevenueRecordSerializer(record).data for record in records), REVENUE_COLUMNS
    )


def _reject_constant(token):
    raise ParameterPackError(f"pack: non-finite number {token} is not allowed")


def load_parameter_pack(text):
    """Parse and validate pack.json content into a NodeParameterPack."""
    try:
        data = json.loads(text.lstrip('\ufeff'), parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParameterPackError(f"pack: invalid JSON ({exc})") from exc
    serializer = ParameterPackSerializer(data=data)
    if not serializer.is_valid():
        messages = flatten_error_detail(serializer.errors)
        raise ParameterPackError("pack: " + "; ".join(messages))
    return serializer.save()


def _node_entry_data(entry):
    return {
        'defect_density_per_cm2': entry.defect_density_per_cm2.to_spec(),
        'epa_kwh_per_cm2': entry.epa_kwh_per_cm2.to_spec(),
        'gpa_kg_per_cm2': entry.gpa_kg_per_cm2.to_spec(),
        'materials_kg_per_cm2': entry.materials_kg_per_cm2,
        'manufacturing_cost_usd_per_cm2': entry.manufacturing_cost_usd_per_cm2,
        'packaging_carbon_kg_per_cm2': entry.packaging_carbon_kg_per_cm2,
        'packaging_overhead_factors': {
            str(count): factor for count, factor in entry.packaging_overhead_factors.items()
        },
        'packaging_yield': entry.packaging_yield,
        'clustering_alpha': entry.clustering_alpha,
    }


def pack_to_data(pack):
    """JSON-ready dict of `pack`, in the pack.json layout."""
    params = pack.global_params
    return {
        'description': pack.description,
        'global': {
            'fab_carbon_intensity_kg_per_kwh': params.fab_carbon_intensity_kg_per_kwh.to_spec(),
            'use_carbon_intensity_kg_per_kwh': params.use_carbon_intensity_kg_per_kwh,
            'design': {
                'design_energy_kwh_per_mm2': params.design.design_energy_kwh_per_mm2,
                'design_carbon_intensity_kg_per_kwh': params.design.design_carbon_intensity_kg_per_kwh,
                'amortization_volume_units': params.design.amortization_volume_units,
            },
            'usage': {
                'lifetime_years': params.usage.lifetime_years,
                'idle_fraction': params.usage.idle_fraction,
            },
            'end_of_life_kg_per_package': params.end_of_life_kg_per_package,
        },
        'nodes': {
            format_node(node_nm): _node_entry_data(entry)
            for node_nm, entry in sorted(pack.nodes.items())
        },
    }


def dump_parameter_pack(pack):
    """pack.json text; loading it back yields an equal dump."""
    return json.dumps(pack_to_data(pack), indent=2) + '\n'


def load_processors_file(path):
    return parse_processors(read_text(path))


def load_revenue_file(path):
    return parse_revenue(read_text(path))


def load_pack_file(path):
    return load_parameter_pack(read_text(path))


def find_processor(records, name):
    """Record named `name`; otherwise UnknownProcessorError with the nearest name."""
    for record in records:
        if record.name == name:
            return record
    raise UnknownProcessorError(name, closest_match(name, [record.name for record in records]))
