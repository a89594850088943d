"""Exact performance metrics of a valid array."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import InvalidArray
from .model import STAR, PdaArray
from .numbers import dof_upper_bound, rho_of
from .validate import validate


@dataclass(frozen=True)
class PdaMetrics:
    Z: int
    memory_ratio: Fraction
    sum_dof: Fraction
    mu: int
    rho: int
    per_symbol_occurrences: dict[int, int]
    dof_upper_bound: Fraction
    is_optimal: bool


def metrics(P: PdaArray) -> PdaMetrics:
    report = validate(P)
    if not report.ok:
        first = report.violations[0].describe() if report.violations else "unknown"
        raise InvalidArray(f"array fails validation: {first}", report)
    Z = report.z_per_column[0]
    gamma = Fraction(Z, P.F)
    sum_dof = Fraction(P.K * (P.F - Z), P.S)
    counts = np.bincount(P.entries.ravel(), minlength=P.S + 1)
    occurrences = {s: int(counts[s]) for s in range(1, P.S + 1)}
    bound = dof_upper_bound(P.G, P.L, P.K, gamma)
    return PdaMetrics(
        Z=Z,
        memory_ratio=gamma,
        sum_dof=sum_dof,
        mu=report.mu,
        rho=rho_of(P.G, P.L),
        per_symbol_occurrences=occurrences,
        dof_upper_bound=bound,
        is_optimal=sum_dof == bound,
    )


def integer_entry_count(P: PdaArray) -> int:
    return int(np.count_nonzero(P.entries != STAR))
