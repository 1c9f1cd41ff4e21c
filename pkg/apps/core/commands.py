"""
Command Base

Shared flags, input loading, report writing and error handling for every
analysis management command.
"""

import argparse
import logging

from django.conf import settings
from django.core.management.base import BaseCommand

from apps.dataset.loaders import load_pack_file, load_processors_file, load_revenue_file

from .exceptions import command_exception_handler
from .manifest import RunManifest
from .reports import FORMAT_CHOICES, ReportWriter

logger = logging.getLogger(__name__)


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"'{text}' must be >= 1")
    return value


def seed_value(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer seed")


def float_list(text):
    """Comma-separated floats: '50,100,150'."""
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma-separated list of numbers")


def int_list(text):
    try:
        return [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma-separated list of integers")


class CarbonCommand(BaseCommand):
    """
    Base class for the analysis commands.

    Subclasses set `command_name`, declare extra flags in
    `add_command_arguments` and implement `run(options)`, which writes
    its reports through `self.writer` and returns the command-specific
    parameters recorded in the manifest.
    """

    command_name = None
    # Deterministic commands record no seed or sample count.
    stochastic = True

    def add_arguments(self, parser):
        defaults = settings.CARBON
        parser.add_argument('--dataset', default=str(defaults['DATASET_PATH']),
                            help="processors.csv path")
        parser.add_argument('--pack', default=str(defaults['PACK_PATH']),
                            help="pack.json path")
        parser.add_argument('--seed', type=seed_value, default=defaults['DEFAULT_SEED'],
                            help="Monte Carlo seed (64-bit)")
        parser.add_argument('--samples', type=positive_int, default=defaults['DEFAULT_SAMPLES'],
                            help="Monte Carlo samples per estimate")
        parser.add_argument('--format', choices=FORMAT_CHOICES, default='json',
                            help="report format")
        parser.add_argument('--out', default=str(defaults['OUTPUT_DIR']),
                            help="report directory")
        parser.add_argument('--workers', type=positive_int, default=defaults['WORKERS'],
                            help="parallel Monte Carlo workers; never changes results")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        self.input_paths = {}
        try:
            self.writer = ReportWriter(options['out'], options['format'])
            logger.info(f"{self.command_name}: writing {options['format']} reports to {options['out']}")
            parameters = self.run(options) or {}
            parameters['format'] = options['format']
            manifest = RunManifest.build(
                command=self.command_name,
                parameters=parameters,
                seed=options['seed'] if self.stochastic else None,
                samples=options['samples'] if self.stochastic else None,
                input_paths=self.input_paths,
            )
            self.writer.write_json('manifest', manifest.to_data())
        except Exception as exc:
            raise command_exception_handler(exc) from exc

    def run(self, options):
        raise NotImplementedError

    # Input loading -----------------------------------------------------------

    def load_records(self, options):
        records, diagnostics = load_processors_file(options['dataset'])
        self.input_paths['dataset'] = options['dataset']
        if diagnostics:
            self.stderr.write(f"{len(diagnostics)} dataset row(s) rejected; see log")
        return records

    def load_pack(self, options):
        pack = load_pack_file(options['pack'])
        self.input_paths['pack'] = options['pack']
        return pack

    def load_revenue(self, options):
        records, diagnostics = load_revenue_file(options['revenue'])
        self.input_paths['revenue'] = options['revenue']
        if diagnostics:
            self.stderr.write(f"{len(diagnostics)} revenue row(s) rejected; see log")
        return records

    def monte_carlo_options(self, options):
        return {
            'seed': options['seed'],
            'samples': options['samples'],
            'workers': options['workers'],
        }
