"""Array data model, validation, metrics and file format."""

from .io import dumps, loads, read_array, write_array
from .metrics import PdaMetrics, metrics
from .model import STAR, PdaArray, relabel_symbols
from .numbers import ceil_div, dof_upper_bound, format_fraction, residue, rho_of, tau_of
from .validate import SymbolBlock, ValidationReport, Violation, consistency_number, symbol_block, validate

__all__ = [
    "STAR", "PdaArray", "relabel_symbols", "validate", "ValidationReport", "Violation",
    "SymbolBlock", "symbol_block", "consistency_number", "metrics", "PdaMetrics",
    "dumps", "loads", "read_array", "write_array", "ceil_div", "residue", "tau_of",
    "rho_of", "dof_upper_bound", "format_fraction",
]
