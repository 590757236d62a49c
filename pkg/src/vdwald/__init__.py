"""Hadamard products, Thorin measures, van Dantzig pairs and Wald couples."""
__version__ = "0.1.0"

from .errors import (BracketError, DomainError, EnvelopeError, PoleError, UnsupportedMeasureError,
                     VdWaldError)

__all__ = [
    "__version__",
    "VdWaldError",
    "DomainError",
    "PoleError",
    "BracketError",
    "EnvelopeError",
    "UnsupportedMeasureError",
]
