"""Bipartite graphs and Hopcroft-Karp maximum matching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass(frozen=True)
class SymbolGraph:
    x_vertices: Sequence[Hashable]
    y_vertices: Sequence[Hashable]
    adjacency: Sequence[tuple[Hashable, Hashable]]


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[Hashable, Hashable], ...]
    perfect: bool

    def as_dict(self) -> dict:
        return dict(self.pairs)


def _adjacency_lists(g: SymbolGraph):
    xi = {x: i for i, x in enumerate(g.x_vertices)}
    yi = {y: i for i, y in enumerate(g.y_vertices)}
    adj: list[list[int]] = [[] for _ in g.x_vertices]
    for x, y in g.adjacency:
        adj[xi[x]].append(yi[y])
    return adj


def max_matching(g: SymbolGraph) -> Matching:
    """Maximum-cardinality matching; ties broken by edge order."""
    adj = _adjacency_lists(g)
    nx_, ny_ = len(g.x_vertices), len(g.y_vertices)
    match_x = [-1] * nx_
    match_y = [-1] * ny_
    while True:
        dist = [-1] * nx_
        queue = deque()
        for u in range(nx_):
            if match_x[u] == -1:
                dist[u] = 0
                queue.append(u)
        reachable_free = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                v = match_y[w]
                if v == -1:
                    reachable_free = True
                elif dist[v] == -1:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if not reachable_free:
            break
        cursor = [0] * nx_
        for root in range(nx_):
            if match_x[root] != -1:
                continue
            stack, via = [root], []
            while stack:
                u = stack[-1]
                if cursor[u] == len(adj[u]):
                    dist[u] = -2  # dead end for the rest of this phase
                    stack.pop()
                    if via:
                        via.pop()
                    continue
                w = adj[u][cursor[u]]
                cursor[u] += 1
                v = match_y[w]
                if v == -1:
                    via.append(w)
                    for uu, ww in zip(stack, via):
                        match_x[uu] = ww
                        match_y[ww] = uu
                    break
                if dist[v] == dist[u] + 1:
                    via.append(w)
                    stack.append(v)
    pairs = tuple((g.x_vertices[u], g.y_vertices[w]) for u, w in enumerate(match_x) if w != -1)
    perfect = len(pairs) == nx_ == ny_
    return Matching(pairs=pairs, perfect=perfect)


def degree_profile(g: SymbolGraph) -> tuple[set[int], set[int]]:
    dx = {x: 0 for x in g.x_vertices}
    dy = {y: 0 for y in g.y_vertices}
    for x, y in g.adjacency:
        dx[x] += 1
        dy[y] += 1
    return set(dx.values()), set(dy.values())
