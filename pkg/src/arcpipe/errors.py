"""Exceptions shared across the pipeline.

The CLI maps them to exit codes: ValidationError -> 1 (the data cannot
support the requested operation), FormatError -> 2 (unreadable or
malformed input files).
"""


class ValidationError(Exception):
    """The input data is structurally fine but cannot satisfy the request."""


class FormatError(Exception):
    """An input file is missing, unreadable, or violates its schema."""
