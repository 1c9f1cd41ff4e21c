import json
import tempfile
from pathlib import Path

from django.core.management.base import CommandError
from django.test import SimpleTestCase
from rest_framework import serializers

from apps.core.exceptions import (
    EXIT_INPUT_ERROR,
    EXIT_INVARIANT_FAILURE,
    DomainError,
    InputError,
    InvariantViolation,
    UnknownProcessorError,
    command_exception_handler,
    flatten_error_detail,
)
from apps.core.manifest import RunManifest
from apps.core.reports import ReportWriter, render_csv
from apps.core.utils import closest_match, edit_distance, read_text, sha256_file


class PairSerializer(serializers.Serializer):
    label = serializers.CharField()
    value = serializers.FloatField(allow_null=True)
    flag = serializers.BooleanField()


ROWS = [
    {'label': 'a', 'value': 1.5, 'flag': True},
    {'label': 'b', 'value': None, 'flag': False},
]


class ReportWriterTests(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        self.out = Path(self._tmp.name)

    def test_json_report_holds_metadata_and_tables(self):
        writer = ReportWriter(self.out, 'json')
        writer.write_report(
            'pairs',
            {'rows': (PairSerializer, ROWS), 'more': (PairSerializer, ROWS[:1])},
            metadata={'note': 'x'},
            extra={'samples': [1.0]},
        )
        payload = json.loads((self.out / 'pairs.json').read_text())
        self.assertEqual(list(payload), ['metadata', 'rows', 'more', 'samples'])
        self.assertEqual(payload['rows'][1], {'label': 'b', 'value': None, 'flag': False})

    def test_csv_report_splits_tables(self):
        writer = ReportWriter(self.out, 'csv')
        writer.write_report('pairs', {'rows': (PairSerializer, ROWS), 'more': (PairSerializer, ROWS)})
        self.assertEqual(
            sorted(path.name for path in writer.written), ['pairs.csv', 'pairs_more.csv']
        )
        self.assertEqual(
            (self.out / 'pairs.csv').read_text(),
            'label,value,flag\na,1.5,true\nb,,false\n',
        )

    def test_csv_report_keeps_metadata_beside_tables(self):
        writer = ReportWriter(self.out, 'csv')
        writer.write_report(
            'pairs', {'rows': (PairSerializer, ROWS)}, metadata={'note': 'x'},
            extra={'samples': [1.0]},
        )
        payload = json.loads((self.out / 'pairs_metadata.json').read_text())
        self.assertEqual(payload, {'metadata': {'note': 'x'}, 'samples': [1.0]})

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            ReportWriter(self.out, 'xml')

    def test_render_csv_keeps_column_order(self):
        self.assertEqual(render_csv([{'b': 2, 'a': 1}], ['a', 'b']), 'a,b\n1,2\n')


class ManifestTests(SimpleTestCase):
    def test_manifest_digests_inputs(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'input.csv'
            path.write_text('x\n')
            manifest = RunManifest.build(
                'estimate', {'z': 1, 'a': 2}, seed=5, samples=10, input_paths={'dataset': path}
            )
            data = manifest.to_data()
            self.assertEqual(list(data['parameters']), ['a', 'z'])
            self.assertEqual(data['inputs'][0]['file'], 'input.csv')
            self.assertEqual(data['inputs'][0]['sha256'], sha256_file(path))
            self.assertEqual(data['version'], '1.0.0')


class ExceptionHandlerTests(SimpleTestCase):
    def test_input_errors_exit_with_two(self):
        error = command_exception_handler(UnknownProcessorError('X', 'Y'))
        self.assertIsInstance(error, CommandError)
        self.assertEqual(error.returncode, EXIT_INPUT_ERROR)
        self.assertEqual(str(error), "Unknown processor 'X'. Did you mean 'Y'?")

    def test_domain_errors_exit_with_two(self):
        self.assertEqual(command_exception_handler(DomainError('bad')).returncode, EXIT_INPUT_ERROR)

    def test_missing_file_exits_with_two(self):
        error = command_exception_handler(FileNotFoundError(2, 'missing', 'pack.json'))
        self.assertEqual(error.returncode, EXIT_INPUT_ERROR)
        self.assertIn('pack.json', str(error))

    def test_unreadable_paths_exit_with_two(self):
        for error in (IsADirectoryError(21, 'Is a directory', 'pack.json'),
                      PermissionError(13, 'Permission denied', 'out'),
                      FileExistsError(17, 'File exists', 'reports')):
            with self.subTest(error=type(error).__name__):
                handled = command_exception_handler(error)
                self.assertEqual(handled.returncode, EXIT_INPUT_ERROR)
                self.assertIn(error.filename, str(handled))

    def test_invariant_violation_exits_with_three(self):
        with self.assertLogs('apps.core.exceptions', level='ERROR'):
            error = command_exception_handler(InvariantViolation('broken'))
        self.assertEqual(error.returncode, EXIT_INVARIANT_FAILURE)

    def test_flatten_nested_detail(self):
        detail = {'nodes': {'7': {'epa': ['required']}}, 'description': ['too long']}
        self.assertEqual(
            flatten_error_detail(detail), ['nodes.7.epa: required', 'description: too long']
        )


class UtilsTests(SimpleTestCase):
    def test_edit_distance(self):
        self.assertEqual(edit_distance('kitten', 'sitting'), 3)
        self.assertEqual(edit_distance('', 'abc'), 3)
        self.assertEqual(edit_distance('same', 'same'), 0)

    def test_closest_match_ignores_case(self):
        self.assertEqual(closest_match('epyc 7763', ['EPYC 7763', 'EPYC 7742']), 'EPYC 7763')
        self.assertIsNone(closest_match('x', []))

    def test_read_text_rejects_invalid_utf8(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'latin1.csv'
            path.write_bytes(b'caf\xe9\n')
            with self.assertRaises(InputError) as caught:
                read_text(path)
            self.assertIn('latin1.csv', str(caught.exception))

    def test_read_text_drops_byte_order_mark(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'bom.csv'
            path.write_bytes(b'\xef\xbb\xbfname\n')
            self.assertEqual(read_text(path), 'name\n')
