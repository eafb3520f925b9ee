"""Exception types shared across the package.

Everything raised for bad data or bad configuration derives from
:class:`MelepError` so callers (and the CLI) can catch one base class.
"""

from __future__ import annotations

__all__ = [
    "MelepError",
    "ValidationError",
    "DimensionMismatchError",
    "DegenerateLabelError",
    "ConstantInputError",
    "TooFewPointsError",
    "LengthMismatchError",
    "DegenerateRangeError",
    "NoSupportError",
    "InsufficientRecordsError",
    "InsufficientLabelsError",
    "GenerationError",
    "PairingError",
    "CsvError",
    "MissingHeaderError",
    "RaggedRowError",
    "NonNumericCellError",
    "OutOfRangeError",
    "NonBinaryCellError",
    "DuplicateIdError",
    "DuplicateNameError",
    "ManifestError",
    "SchemaVersionError",
]


class MelepError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MelepError, ValueError):
    """Input matrices, vectors or options failed validation."""


class DimensionMismatchError(ValidationError):
    """Two inputs that must agree in shape do not."""


class DegenerateLabelError(ValidationError):
    """A target label cannot be weighted (no negatives and no cap given)."""

    def __init__(self, label_index: int, message: str | None = None):
        self.label_index = label_index
        super().__init__(message or f"target label {label_index} has no negatives; "
                                    "supply a cap to weight it")


class ConstantInputError(ValidationError):
    """A correlation input has zero variance."""


class TooFewPointsError(ValidationError):
    """Fewer points than the statistic needs."""


class LengthMismatchError(DimensionMismatchError):
    """Paired vectors differ in length."""


class DegenerateRangeError(ValidationError):
    """Binning range has zero width."""


class NoSupportError(ValidationError):
    """Truth matrix has no positive anywhere, so support weights are undefined."""


class InsufficientRecordsError(MelepError):
    """A fold could not reach its record quota after the retry budget."""

    def __init__(self, fold_id: int, message: str):
        self.fold_id = fold_id
        super().__init__(message)


class InsufficientLabelsError(MelepError):
    """Fewer eligible labels than the sampler configuration requires."""


class GenerationError(MelepError):
    """Synthetic data generation failed its retry budget."""


class PairingError(MelepError):
    """Prediction and label files do not describe the same record ids."""


class CsvError(MelepError):
    """Malformed CSV input.  ``row`` is the 1-based line number including the
    header; ``col`` is the 1-based column number including the id column."""

    def __init__(self, path: str, row: int | None, col: int | None, message: str):
        self.path = path
        self.row = row
        self.col = col
        where = path
        if row is not None:
            where += f":row {row}"
        if col is not None:
            where += f":col {col}"
        super().__init__(f"{where}: {message}")


class MissingHeaderError(CsvError):
    pass


class RaggedRowError(CsvError):
    pass


class NonNumericCellError(CsvError):
    pass


class OutOfRangeError(CsvError):
    pass


class NonBinaryCellError(CsvError):
    pass


class DuplicateIdError(CsvError):
    pass


class DuplicateNameError(CsvError):
    pass


class ManifestError(MelepError):
    """Manifest JSON is malformed or inconsistent with the files it names."""


class SchemaVersionError(MelepError):
    """A JSON document declares a schema version this build cannot read."""
