"""Exception types shared across the package."""


class VdWaldError(Exception):
    """Base class for all package errors."""


class DomainError(VdWaldError, ValueError):
    """Argument outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically on top of) a pole."""


class BracketError(VdWaldError, ValueError):
    """Root-finding bracket does not straddle a sign change."""


class EnvelopeError(VdWaldError, RuntimeError):
    """A rejection envelope failed to dominate the target density."""


class UnsupportedMeasureError(VdWaldError, ValueError):
    """Measure type not handled by the requested construction."""
