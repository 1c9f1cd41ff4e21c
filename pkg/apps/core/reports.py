"""
Report Writers

Renders report rows to JSON or CSV files under an output directory.
Rows pass through a report serializer, so both formats share the same
columns and values.
"""

import csv
import io
import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

FORMAT_CHOICES = ('json', 'csv')


def serialize_rows(serializer_class, rows):
    """List of dicts in the serializer's column order."""
    return [dict(item) for item in serializer_class(list(rows), many=True).data]


def columns_of(serializer_class):
    return list(serializer_class().fields)


def _csv_cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return value


def render_csv(rows, columns):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_cell(row.get(key)) for key in columns})
    return buffer.getvalue()


def render_json(payload):
    return json.dumps(payload, indent=2, allow_nan=False) + '\n'


class ReportWriter:
    """
    Writes one report per call.

    JSON: `<name>.json` holding `metadata` plus one key per table.
    CSV: the primary table as `<name>.csv`, every other table as
    `<name>_<table>.csv`, and metadata plus extra sections as
    `<name>_metadata.json`.
    """

    def __init__(self, out_dir, fmt='json'):
        if fmt not in FORMAT_CHOICES:
            raise ValueError(f"Unknown report format '{fmt}'")
        self.out_dir = Path(out_dir)
        self.format = fmt
        self.written = []

    def _write(self, filename, text):
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / filename
        path.write_text(text, encoding='utf-8')
        self.written.append(path)
        logger.info(f"Wrote {path}")
        return path

    def write_report(self, name, tables, metadata=None, extra=None):
        """
        `tables` maps table name to (serializer_class, rows); the first
        table is the primary one. `extra` adds non-tabular sections.
        """
        serialized = {
            table: (serializer_class, serialize_rows(serializer_class, rows))
            for table, (serializer_class, rows) in tables.items()
        }
        if self.format == 'json':
            payload = {'metadata': metadata or {}}
            for table, (_, rows) in serialized.items():
                payload[table] = rows
            payload.update(extra or {})
            return [self._write(f"{name}.json", render_json(payload))]

        paths = []
        for index, (table, (serializer_class, rows)) in enumerate(serialized.items()):
            filename = f"{name}.csv" if index == 0 else f"{name}_{table}.csv"
            paths.append(self._write(filename, render_csv(rows, columns_of(serializer_class))))
        if metadata is not None or extra:
            payload = {'metadata': metadata or {}}
            payload.update(extra or {})
            paths.append(self._write(f"{name}_metadata.json", render_json(payload)))
        return paths

    def write_json(self, name, payload):
        return self._write(f"{name}.json", render_json(payload))
