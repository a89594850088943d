"""Subset enumeration, Baranyai factorizations and bipartite matching."""

from .baranyai import Factorization, baranyai, locate
from .matching import Matching, SymbolGraph, degree_profile, max_matching
from .subsets import binomial, ksubsets, subset_rank

__all__ = ["binomial", "ksubsets", "subset_rank", "Factorization", "baranyai", "locate",
           "SymbolGraph", "Matching", "max_matching", "degree_profile"]
