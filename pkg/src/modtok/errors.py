"""Exception types shared across the package.

Every operational failure raises a subclass of ModtokError, so pipeline code
can catch a single base class at its boundary. Errors carry the identifiers
needed to locate the failure (offending value, batch index, column, row) as
attributes, not only formatted into the message.

Overflow conditions (a fit that would need a modulus or capacity beyond the
supported range) raise the builtin OverflowError.
"""


class ModtokError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(ModtokError):
    """A value required to be prime is composite (or < 2)."""

    def __init__(self, value: int):
        self.value = value
        super().__init__(f"{value} is not prime")


class ModulusMismatch(ModtokError):
    """Two operands belong to different prime fields."""


class NotInvertible(ModtokError):
    """Zero has no multiplicative inverse in Z_p."""


class IdOutOfRange(ModtokError):
    """An identifier is negative or >= the token-space capacity p**n."""

    def __init__(self, id_: int, capacity: int, index: int | None = None):
        self.id = id_
        self.capacity = capacity
        self.index = index
        at = f" at batch index {index}" if index is not None else ""
        super().__init__(f"id {id_} outside [0, {capacity}){at}")


class DigitOutOfRange(ModtokError):
    """A digit is negative or >= the modulus p."""

    def __init__(
        self,
        digit: int,
        modulus: int,
        index: int | None = None,
        column: str | None = None,
        row: int | None = None,
    ):
        self.digit = digit
        self.modulus = modulus
        self.index = index
        self.column = column
        self.row = row
        where = ""
        if index is not None:
            where = f" at batch index {index}"
        if column is not None:
            where = f" in column {column!r}, row {row}"
        super().__init__(f"digit {digit} outside [0, {modulus}){where}")


class DimensionMismatch(ModtokError):
    """Matrix and vector shapes do not agree."""


class SingularMatrix(ModtokError):
    """Matrix has zero determinant mod p and cannot be inverted."""

    def __init__(self, pivot_column: int):
        self.pivot_column = pivot_column
        super().__init__(f"matrix is singular mod p (no pivot in column {pivot_column})")


class GenerationFailed(ModtokError):
    """Random matrix sampling kept producing singular matrices."""


class FormatError(ModtokError):
    """A persisted document (config, vocabulary, or data file) is malformed."""


class IntegrityError(ModtokError):
    """A persisted config is well-formed but mathematically inconsistent."""


class VersionError(ModtokError):
    """A persisted config declares an unsupported format version."""

    def __init__(self, version):
        self.version = version
        super().__init__(f"unsupported config format_version {version!r}")


class UnknownValue(ModtokError):
    """A cell value is absent from the column's vocabulary."""

    def __init__(self, column: str, row_number: int, value: str):
        self.column = column
        self.row_number = row_number
        self.value = value
        super().__init__(
            f"value {value!r} in column {column!r}, row {row_number} is not in the vocabulary"
        )


class MissingColumn(ModtokError):
    """A required column is absent from the input header."""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"column {column!r} not found in input header")


class IdAboveVocab(ModtokError):
    """A decoded id falls outside the vocabulary (corrupted tokens)."""

    def __init__(self, column: str, row_number: int, id_: int, vocab_size: int):
        self.column = column
        self.row_number = row_number
        self.id = id_
        self.vocab_size = vocab_size
        super().__init__(
            f"column {column!r}, row {row_number}: decoded id {id_} >= vocabulary size {vocab_size}"
        )


class CapacityError(ModtokError):
    """A vocabulary grew past the supported number of distinct values."""
