"""Hybrid construction: a hypergraph-factorized base array, two replicated
arrays with equal symbol sets, and a perfect matching that merges them.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..combinatorics import SymbolGraph, Matching, baranyai, binomial, ksubsets, locate, max_matching
from ..core.io import write_array
from ..core.model import PdaArray, relabel_symbols
from ..core.numbers import ceil_div, residue, tau_of
from ..core.validate import validate
from ..errors import BadParams, NoPerfectMatching, PostValidationFailed
from .structured import StructuredArray, format_label


@dataclass(frozen=True)
class HybridParams:
    G: int
    L: int
    L1: int
    K1: int
    t1: int
    tau: int
    tau1: int
    tau2: int
    m: int
    lam1: int
    lam2: int
    lam3: int
    layers: int

    @property
    def K(self) -> int:
        return self.m * self.K1

    @property
    def x_copies(self) -> int:
        return self.m * binomial(self.t1 + self.tau1, self.tau2)


def _check_base(G: int, K1: int, t1: int, tau1: int) -> tuple[int, int]:
    if tau1 < 1 or t1 < 1:
        raise BadParams(f"need t1 >= 1 and tau1 >= 1, got t1={t1}, tau1={tau1}")
    if t1 % tau1:
        raise BadParams(f"need tau1 | t1, got tau1={tau1}, t1={t1}")
    if K1 % tau1:
        raise BadParams(f"need tau1 | K1, got tau1={tau1}, K1={K1}")
    if t1 + tau1 >= K1:
        raise BadParams(f"need t1 + tau1 < K1, got {t1 + tau1} >= {K1}")
    lam2 = binomial(t1 + tau1 - 1, t1)
    if 2 * G > lam2:
        raise BadParams(f"need 2G <= C(t1+tau1-1, t1), got {2 * G} > {lam2}")
    return binomial(K1 - t1 - 1, tau1 - 1), lam2


def hybrid_params(G: int, L: int, L1: int, K1: int, t1: int) -> HybridParams:
    """Derived parameters, raising ``BadParams`` naming the first failed condition."""
    if min(G, L, L1, K1, t1) < 1:
        raise BadParams("G, L, L1, K1 and t1 must be positive")
    tau, tau1 = tau_of(G, L), tau_of(G, L1)
    m = tau // tau1
    if m < 1:
        raise BadParams(f"need floor(ceil(L/G) / ceil(L1/G)) >= 1, got m={m}")
    tau2 = tau - m * tau1
    if tau2 == 0:
        raise BadParams(f"ceil(L/G) = {tau} is a multiple of ceil(L1/G) = {tau1}; "
                        "use group_replicate (gtst) instead")
    lam1, lam2 = _check_base(G, K1, t1, tau1)
    if (t1 + tau1) % tau2:
        raise BadParams(f"need tau2 | (t1 + tau1), got tau2={tau2}, t1+tau1={t1 + tau1}")
    lam3 = binomial(t1 + tau1 - 1, tau2 - 1)
    return HybridParams(G=G, L=L, L1=L1, K1=K1, t1=t1, tau=tau, tau1=tau1, tau2=tau2, m=m,
                        lam1=lam1, lam2=lam2, lam3=lam3, layers=G // math.gcd(G, lam2))


def new_tst_b(G: int, K1: int, t1: int, tau1: int, L1: int | None = None) -> StructuredArray:
    """Base array with symbols ``(S, a)`` where ``a`` folds the parallel-class index.

    ``L1`` defaults to the smallest value with ``ceil(L1/G) = tau1``.
    """
    lam1, lam2 = _check_base(G, K1, t1, tau1)
    layers = G // math.gcd(G, lam2)
    L1 = G * (tau1 - 1) + 1 if L1 is None else L1
    if tau_of(G, L1) != tau1:
        raise BadParams(f"ceil(L1/G) must equal tau1={tau1}, got {tau_of(G, L1)}")
    grid = []
    for T in ksubsets(K1, t1):
        rest = [k for k in range(1, K1 + 1) if k not in T]
        rest_fact = baranyai(rest, tau1)
        for r in range(1, lam1 + 1):
            owner = {k: blk for blk in rest_fact.classes[r - 1] for k in blk}
            for l in range(1, layers + 1):
                row = []
                for k in range(1, K1 + 1):
                    if k not in owner:
                        row.append(None)
                        continue
                    blk = owner[k]
                    S = tuple(sorted(T + blk))
                    d, _ = locate(baranyai(S, tau1), blk)
                    row.append((S, ceil_div(d + (l - 1) * lam2, G)))
                grid.append(row)
    return StructuredArray.from_grid(grid, G, L1)


def _append_tail(arr: StructuredArray, copies: int, axis: int, L: int) -> StructuredArray:
    """Stack ``copies`` of ``arr`` along ``axis``; copy ``c`` appends ``c`` to every label."""
    S = arr.S
    blocks = []
    for c in range(copies):
        shifted = np.where(arr.cells > 0, arr.cells + c * S, 0)
        blocks.append(shifted)
    cells = np.concatenate(blocks, axis=axis)
    labels = tuple(lab + (c,) for c in range(1, copies + 1) for lab in arr.labels)
    return StructuredArray(G=arr.G, L=L, cells=cells, labels=labels)


def build_t(B: StructuredArray, p: HybridParams) -> StructuredArray:
    """``lam3`` vertical copies of ``B``, copy ``y1`` tagging column ``k`` with ``(y1, y2)``."""
    grid = []
    for y1 in range(1, p.lam3 + 1):
        for f in range(B.F):
            row = []
            for k in range(1, B.K + 1):
                lab = B.label_at(f, k - 1)
                if lab is None:
                    row.append(None)
                    continue
                cls = baranyai(lab[0], p.tau2).classes[y1 - 1]
                y2 = next(j for j, blk in enumerate(cls, 1) if k in blk)
                row.append(lab + (y1, y2))
            grid.append(row)
    return StructuredArray.from_grid(grid, B.G, p.L)


def _a_compatible(a: int, a2: int, p: HybridParams) -> bool:
    r = residue((a - a2) * p.G, p.lam2)
    return p.G <= r <= p.lam2 - p.G


def symbol_graph(X: StructuredArray, Y: StructuredArray, p: HybridParams) -> SymbolGraph:
    """Bipartite graph between X labels ``(S, a, x)`` and Y labels ``(S', a', y1, y2, y3)``."""
    xs = sorted(X.labels)
    ys = sorted(Y.labels)
    y_present = set(ys)
    a_range = range(1, p.lam2 // math.gcd(p.G, p.lam2) + 1)
    edges = []
    for x in xs:
        S, a = x[0], x[1]
        outside = [k for k in range(1, p.K1 + 1) if k not in S]
        nbrs = []
        for drop in combinations(S, p.tau2):
            kept = [k for k in S if k not in drop]
            for add in combinations(outside, p.tau2):
                S2 = tuple(sorted(kept + list(add)))
                y1, y2 = locate(baranyai(S2, p.tau2), add)
                for a2 in a_range:
                    if not _a_compatible(a, a2, p):
                        continue
                    for y3 in range(1, p.m + 1):
                        y = (S2, a2, y1, y2, y3)
                        if y in y_present:
                            nbrs.append(y)
        edges.extend((x, y) for y in sorted(nbrs))
    return SymbolGraph(x_vertices=xs, y_vertices=ys, adjacency=edges)


def disjoint_residues(a: int, a2: int, G: int, lam2: int) -> bool:
    """Whether the ``G`` consecutive residues ending at ``aG`` and ``a2 G`` are disjoint."""
    d1 = {residue((a - 1) * G + i, lam2) for i in range(1, G + 1)}
    d2 = {residue((a2 - 1) * G + i, lam2) for i in range(1, G + 1)}
    return not d1 & d2


@dataclass
class HybridTrace:
    params: HybridParams
    B: StructuredArray
    Q: StructuredArray | None = None
    X: StructuredArray | None = None
    T: StructuredArray | None = None
    Y: StructuredArray | None = None
    graph: SymbolGraph | None = None
    matching: Matching | None = None
    P: PdaArray | None = None

    def export(self, directory: str | os.PathLike, stem: str = "hybrid") -> list[str]:
        """Write intermediates as array files plus a tab-separated edge list."""
        os.makedirs(directory, exist_ok=True)
        written = []
        for name in ("B", "Q", "X", "T", "Y"):
            arr = getattr(self, name)
            if arr is None:
                continue
            path = os.path.join(directory, f"{stem}.{name}")
            comments = [f"symbol {i} = {format_label(lab)}" for i, lab in enumerate(arr.labels, 1)]
            write_array(arr.to_pda(), path, comments)
            written.append(path)
        if self.graph is not None:
            path = os.path.join(directory, f"{stem}.graph")
            with open(path, "w", newline="\n", encoding="ascii") as fh:
                for x, y in self.graph.adjacency:
                    fh.write(f"{format_label(x)}\t{format_label(y)}\n")
            written.append(path)
        return written


def hybrid(G: int, L: int, L1: int, K1: int, t1: int) -> HybridTrace:
    p = hybrid_params(G, L, L1, K1, t1)
    B = new_tst_b(G, K1, t1, p.tau1, L1)
    trace = HybridTrace(params=p, B=B)

    trace.Q = StructuredArray(G=G, L=L, cells=np.tile(B.cells, (1, p.m)), labels=B.labels)
    trace.X = _append_tail(trace.Q, p.x_copies, axis=0, L=L)

    T = build_t(B, p)
    trace.T = T
    trace.Y = _append_tail(T, p.m, axis=1, L=L)

    trace.graph = symbol_graph(trace.X, trace.Y, p)
    trace.matching = max_matching(trace.graph)
    if not trace.matching.perfect:
        raise NoPerfectMatching(
            f"matching covers {len(trace.matching.pairs)} of {trace.X.S} X-symbols", trace)

    x_id = {lab: i for i, lab in enumerate(trace.X.labels, 1)}
    y_to_x = np.zeros(trace.Y.S + 1, dtype=np.int64)
    y_index = {lab: i for i, lab in enumerate(trace.Y.labels, 1)}
    for x, y in trace.matching.pairs:
        y_to_x[y_index[y]] = x_id[x]
    merged = np.concatenate([trace.X.cells, y_to_x[trace.Y.cells]], axis=0)
    P = relabel_symbols(PdaArray(G=G, L=L, S=trace.X.S, entries=merged))
    trace.P = P
    report = validate(P)
    if not report.ok:
        raise PostValidationFailed(
            "merged array fails validation: " + report.violations[0].describe(), trace)
    return trace
