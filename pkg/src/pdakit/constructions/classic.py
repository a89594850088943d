"""MN, TST, cyclic square and grouped arrays."""

from __future__ import annotations

import numpy as np

from ..combinatorics import binomial, ksubsets, subset_rank
from ..core.metrics import metrics
from ..core.model import STAR, PdaArray, relabel_symbols
from ..core.numbers import ceil_div, residue, rho_of, tau_of
from ..core.validate import validate
from ..errors import BadParams, Infeasible
from .structured import StructuredArray


def mn_pda(K: int, t: int) -> PdaArray:
    """Single-antenna array indexed by ``t``-subsets of the ``K`` users."""
    if not 1 <= t < K:
        raise BadParams(f"need 1 <= t < K, got K={K}, t={t}")
    rows = ksubsets(K, t)
    E = np.zeros((len(rows), K), dtype=np.int64)
    for r, T in enumerate(rows):
        for k in range(1, K + 1):
            if k not in T:
                E[r, k - 1] = subset_rank(sorted(T + (k,)), K) + 1
    return PdaArray(G=1, L=1, S=binomial(K, t + 1), entries=E)


def tst_row_labels(G: int, L: int, K: int, t: int) -> list[tuple]:
    """Row labels ``(T, R, l)`` in construction order: layer ``l`` outermost."""
    tau = tau_of(G, L)
    return [(T, R, l)
            for l in range(1, G + 1)
            for T in ksubsets(K, t)
            for R in ksubsets(K - t - 1, tau - 1)]


def tst_structured(G: int, L: int, K: int, t: int) -> StructuredArray:
    tau = tau_of(G, L)
    if t < 1 or K < 1 or t + tau > K:
        raise BadParams(f"need t >= 1 and t + ceil(L/G) <= K, got t={t}, ceil(L/G)={tau}, K={K}")
    if ceil_div(G, binomial(t + L // G, t)) > rho_of(G, L):
        raise Infeasible(
            f"ceil(G / C(t + floor(L/G), t)) = {ceil_div(G, binomial(t + L // G, t))} "
            f"exceeds <L>_G = {rho_of(G, L)}")
    seen = [dict() for _ in range(K)]
    grid = []
    for T, R, _ in tst_row_labels(G, L, K, t):
        Tset = set(T)
        row = []
        for k in range(1, K + 1):
            if k in Tset:
                row.append(None)
                continue
            others = [x for x in range(1, K + 1) if x != k and x not in Tset]
            S = tuple(sorted(Tset | {others[i - 1] for i in R} | {k}))
            occ = seen[k - 1].get(S, 0) + 1
            seen[k - 1][S] = occ
            row.append((S, ceil_div(occ, G)))
        grid.append(row)
    return StructuredArray.from_grid(grid, G, L)


def tst(G: int, L: int, K: int, t: int) -> PdaArray:
    return relabel_symbols(tst_structured(G, L, K, t).to_pda())


def square_cyclic(G: int, L: int, K: int, t: int) -> PdaArray:
    """``GK x K`` array with a wrap-around band of ``t`` stars per row."""
    tau, rho = tau_of(G, L), rho_of(G, L)
    if not 1 <= t < K:
        raise BadParams(f"need 1 <= t < K, got K={K}, t={t}")
    if K > tau + t:
        raise BadParams(f"need K <= ceil(L/G) + t, got K={K} > {tau + t}")
    if rho > K - t:
        raise BadParams(f"need <L>_G <= K - t, got {rho} > {K - t}")
    E = np.zeros((G * K, K), dtype=np.int64)
    counters = [0] * K
    for i in range(G):
        for j in range(1, K + 1):
            stars = {residue(j + d, K) for d in range(t)}
            for k in range(1, K + 1):
                if k in stars:
                    continue
                counters[k - 1] += 1
                E[i * K + j - 1, k - 1] = ceil_div(counters[k - 1], G)
    return PdaArray(G=G, L=L, S=K - t, entries=E)


def group_replicate(base: PdaArray, m: int, L: int) -> PdaArray:
    """Place ``m`` copies of ``base`` side by side and raise the server antennas to ``L``."""
    G = base.G
    if m < 1:
        raise BadParams(f"m must be positive, got {m}")
    report = validate(base)
    if not report.ok:
        raise BadParams("base array fails validation: " + report.violations[0].describe())
    if not metrics(base).is_optimal:
        raise BadParams("base array is not optimal")
    if m * tau_of(G, base.L) != tau_of(G, L):
        raise BadParams(f"need m * ceil(L1/G) = ceil(L/G), got {m} * {tau_of(G, base.L)} != {tau_of(G, L)}")
    if rho_of(G, L) < report.mu:
        raise BadParams(f"need <L>_G >= consistency number, got {rho_of(G, L)} < {report.mu}")
    per_row = base.K * base.Z
    stars = np.count_nonzero(base.entries == STAR, axis=1)
    if per_row % base.F or np.any(stars != per_row // base.F):
        raise BadParams("every row of the base must carry exactly K*Z/F stars")
    return PdaArray(G=G, L=L, S=base.S, entries=np.tile(base.entries, (1, m)))


def gtst(G: int, L1: int, K1: int, t1: int, m: int, L: int) -> PdaArray:
    return group_replicate(tst(G, L1, K1, t1), m, L)
