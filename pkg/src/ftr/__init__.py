"""High-precision reconstruction of Eddington's statistical theory.

Importing the package sets the mpmath working precision to 50 digits.
"""
from .numeric import (
    BETA,
    DEFAULT_PRECISION,
    ConstantSet,
    DimSig,
    Quantity,
    bundled,
    get_precision,
    load_constants,
    natural_value,
    set_precision,
)

__version__ = "0.1.0"

set_precision(DEFAULT_PRECISION)

__all__ = [
    "BETA",
    "ConstantSet",
    "DimSig",
    "Quantity",
    "bundled",
    "get_precision",
    "load_constants",
    "natural_value",
    "set_precision",
]
