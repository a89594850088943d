"""Construction, validation and delivery simulation of MIMO placement delivery arrays."""

from .core import PdaArray, metrics, relabel_symbols, validate

__version__ = "0.1.0"
__all__ = ["PdaArray", "metrics", "relabel_symbols", "validate"]
