"""
Exceptions and the command exception handler.

Every failure inside a command is funnelled through
`command_exception_handler`, which maps it to a consistent message and
process exit code:

- 2: user/input error (bad files, unknown processor, violated preconditions)
- 3: internal invariant failure
"""

import logging

from django.core.management.base import CommandError
from rest_framework.exceptions import ValidationError

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 2
EXIT_INVARIANT_FAILURE = 3


class CarbonError(Exception):
    """Base class for every error raised by the project."""


class InputError(CarbonError):
    """The user supplied something unusable."""


class DatasetSchemaError(InputError):
    """A CSV file lacks required columns or cannot be read."""


class ParameterPackError(InputError):
    """A parameter pack violates its schema."""


class UnknownProcessorError(InputError):
    """A processor name does not resolve to a dataset record."""

    def __init__(self, name, suggestion=None):
        self.name = name
        self.suggestion = suggestion
        message = f"Unknown processor '{name}'."
        if suggestion:
            message += f" Did you mean '{suggestion}'?"
        super().__init__(message)


class UnresolvedFlagshipError(InputError):
    """A revenue row names a flagship missing from the dataset."""


class AnalysisInputError(InputError):
    """An analysis received empty or out-of-range arguments."""


class DomainError(CarbonError, ValueError):
    """A mathematical precondition was violated."""


class EstimateError(DomainError):
    """An estimate lacks the data an operation needs."""


class InvariantViolation(CarbonError):
    """An internal invariant failed; always a bug, never bad input."""


def command_exception_handler(exc):
    """
    Convert any exception into a CommandError carrying the right exit code.
    """
    if isinstance(exc, CommandError):
        return exc

    if isinstance(exc, (InputError, DomainError, ValidationError)):
        return CommandError(get_error_message(exc), returncode=EXIT_INPUT_ERROR)

    if isinstance(exc, FileNotFoundError):
        return CommandError(
            f"File not found: {exc.filename}", returncode=EXIT_INPUT_ERROR
        )

    if isinstance(exc, OSError):
        target = exc.filename or exc
        return CommandError(
            f"Cannot use {target}: {exc.strerror or exc}", returncode=EXIT_INPUT_ERROR
        )

    if isinstance(exc, InvariantViolation):
        logger.error(f"Invariant violation: {exc}")
        return CommandError(
            f"Internal invariant failure: {exc}", returncode=EXIT_INVARIANT_FAILURE
        )

    # Handle unexpected exceptions
    logger.exception(f"Unhandled exception: {exc}")
    return CommandError(
        f"An unexpected error occurred: {exc}", returncode=EXIT_INVARIANT_FAILURE
    )


def get_error_message(exc):
    """Get a human-readable error message from the exception."""
    if hasattr(exc, 'detail'):
        return '; '.join(flatten_error_detail(exc.detail)) or str(exc)
    return str(exc)


def flatten_error_detail(detail, prefix=''):
    """
    Flatten nested DRF error details into 'path.to.field: message' strings.
    """
    if isinstance(detail, dict):
        messages = []
        for key, value in detail.items():
            path = f"{prefix}.{key}" if prefix else str(key)
            messages.extend(flatten_error_detail(value, path))
        return messages
    if isinstance(detail, list):
        messages = []
        for item in detail:
            messages.extend(flatten_error_detail(item, prefix))
        return messages
    return [f"{prefix}: {detail}" if prefix else str(detail)]
