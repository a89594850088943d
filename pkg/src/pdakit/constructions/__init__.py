"""Array constructions: MN, TST, cyclic square, grouping and hybrid."""

from .classic import group_replicate, gtst, mn_pda, square_cyclic, tst, tst_row_labels, tst_structured
from .hybrid import (HybridParams, HybridTrace, disjoint_residues, hybrid, hybrid_params, new_tst_b,
                     symbol_graph)
from .structured import StructuredArray, flatten, format_label

__all__ = ["mn_pda", "tst", "tst_structured", "tst_row_labels", "square_cyclic", "group_replicate",
           "gtst", "new_tst_b", "hybrid", "hybrid_params", "HybridParams", "HybridTrace",
           "symbol_graph", "disjoint_residues", "StructuredArray", "flatten", "format_label"]
