"""Exception hierarchy for fragdex.

Library code raises these; only the command line layer turns them into
exit codes.
"""

from typing import Optional, Tuple


class FragdexError(Exception):
    """Base exception for all fragdex errors."""
    pass


class ParseError(FragdexError):
    """Raised when a text input (FASTA, matrix, PSSM, mixture) cannot be parsed."""
    pass


class AlphabetError(FragdexError):
    """Raised when a letter is not part of the alphabet in use."""

    def __init__(self, message: str, letter: Optional[str] = None) -> None:
        super().__init__(message)
        self.letter = letter


class MatrixConditionError(FragdexError):
    """Raised when a score matrix cannot be turned into a quasi-metric."""

    def __init__(self, message: str, pair: Tuple[str, str]) -> None:
        super().__init__(message)
        self.pair = pair


class PartitionError(FragdexError):
    """Raised for an invalid alphabet partition spec."""

    def __init__(self, message: str, letter: Optional[str] = None, position: Optional[int] = None) -> None:
        super().__init__(message)
        self.letter = letter
        self.position = position


class QueryError(FragdexError):
    """Raised when a query does not fit the index or measure."""
    pass


class EmptyDataError(FragdexError):
    """Raised when an operation needs data and got none."""
    pass


class IndexFormatError(FragdexError):
    """Base exception for index file problems."""
    pass


class IndexVersionError(IndexFormatError):
    """Raised on a bad magic number or an unsupported format version."""
    pass


class IndexTruncatedError(IndexFormatError):
    """Raised when an index file ends early."""
    pass


class IndexChecksumError(IndexFormatError):
    """Raised when the stored CRC32 does not match the payload."""
    pass


class IndexMismatchError(IndexFormatError):
    """Raised when an index file does not belong to the given fragment store."""
    pass


class StatisticsError(FragdexError):
    """Raised for invalid inputs to score statistics (negative frequency, E <= 0)."""
    pass


class MixtureError(FragdexError):
    """Raised for an invalid Dirichlet mixture."""
    pass


class EstimationError(FragdexError):
    """Raised when a distance-exponent estimator has nothing to work with."""
    pass


class VerificationError(FragdexError):
    """Raised when an indexed search disagrees with the sequential scan."""

    def __init__(self, message: str, query: Optional[str] = None) -> None:
        super().__init__(message)
        self.query = query
