"""Exception hierarchy for perp counter."""


class PerpCounterError(Exception):
    """Base error for all perp counter failures."""

    pass


class InvalidDiscriminantError(PerpCounterError, ValueError):
    """Discriminant is not a negative fundamental discriminant."""

    pass


class DomainError(PerpCounterError, ValueError):
    """An operation was called outside its precondition."""

    pass


class GeometryError(PerpCounterError):
    """Geodesics are linked, touch at infinity or otherwise have no common perpendicular."""

    pass


class SieveMemoryError(PerpCounterError, MemoryError):
    """A sieve table does not fit in the configured memory bound."""

    def __init__(self, message: str, needed_bytes: int, band_rows: int) -> None:
        """Initialize the error.

        Args:
            message: Human readable message
            needed_bytes: Bytes the full table would need
            band_rows: Band height (rows) that fits in the bound
        """
        super().__init__(message)
        self.needed_bytes = needed_bytes
        self.band_rows = band_rows


class ZetaMismatchError(PerpCounterError):
    """The two independent evaluations of a zeta value disagree."""

    pass


class InvariantViolation(PerpCounterError):
    """Two independent computation paths disagree."""

    pass


class FoldingError(PerpCounterError):
    """Fundamental-domain reduction did not terminate."""

    pass


class ConfigError(PerpCounterError):
    """Settings file or override could not be applied."""

    pass
