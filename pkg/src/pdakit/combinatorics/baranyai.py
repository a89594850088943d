"""Partitioning all alpha-subsets of a ground set into parallel classes.

Two generators are used: the circle method when ``alpha == 2`` and the
element-by-element integral flow argument otherwise. Results are brought
into a canonical order so downstream symbol labels are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from ..errors import BlockNotFound, NotDivisible
from .subsets import binomial

Block = tuple[int, ...]


@dataclass(frozen=True)
class Factorization:
    ground: tuple[int, ...]
    alpha: int
    classes: tuple[tuple[Block, ...], ...]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._index is None:
            index = {blk: (d, j) for d, cls in enumerate(self.classes, 1)
                     for j, blk in enumerate(cls, 1)}
            object.__setattr__(self, "_index", index)

    @property
    def num_classes(self) -> int:
        return len(self.classes)


def _round_robin(v: int) -> list[list[Block]]:
    hub = v - 1
    rounds = []
    for r in range(v - 1):
        pairs = [(r, hub)]
        for k in range(1, v // 2):
            pairs.append(((r + k) % (v - 1), (r - k) % (v - 1)))
        rounds.append([tuple(sorted((a + 1, b + 1))) for a, b in pairs])
    return rounds


def _flow_construction(v: int, alpha: int) -> list[list[Block]]:
    n_classes = binomial(v - 1, alpha - 1)
    per_class = v // alpha
    classes: list[list[Block]] = [[()] * per_class for _ in range(n_classes)]
    for elem in range(1, v + 1):
        remaining = v - elem
        net = nx.DiGraph()
        partial_sizes = {}
        for c, cls in enumerate(classes):
            net.add_edge("src", ("c", c), capacity=1)
            mult: dict[Block, int] = {}
            for blk in cls:
                if len(blk) < alpha:
                    mult[blk] = mult.get(blk, 0) + 1
            for blk, cnt in mult.items():
                net.add_edge(("c", c), ("a", blk), capacity=cnt)
                partial_sizes[blk] = len(blk)
        for blk, size in partial_sizes.items():
            cap = binomial(remaining, alpha - size - 1)
            if cap:
                net.add_edge(("a", blk), "snk", capacity=cap)
        value, flow = nx.maximum_flow(net, "src", "snk")
        if value != n_classes:
            raise RuntimeError(f"flow step for element {elem} reached {value} of {n_classes}")
        for c, cls in enumerate(classes):
            target = next(node[1] for node, amt in flow[("c", c)].items() if amt > 0)
            pos = cls.index(target)
            cls[pos] = target + (elem,)
    return classes


def _canonical_order(classes) -> tuple[tuple[Block, ...], ...]:
    return tuple(sorted(tuple(sorted(tuple(sorted(b)) for b in cls)) for cls in classes))


@lru_cache(maxsize=None)
def _canonical(v: int, alpha: int) -> tuple[tuple[Block, ...], ...]:
    if alpha == 2:
        raw = _round_robin(v)
    else:
        raw = _flow_construction(v, alpha)
    return _canonical_order(raw)


def baranyai(ground, alpha: int) -> Factorization:
    """Canonical factorization of ``C(ground, alpha)`` into parallel classes.

    ``ground`` may be any collection of distinct positive integers; it is
    handled through the order-preserving map from ``1..len(ground)``.
    """
    items = tuple(sorted(ground))
    if len(set(items)) != len(items):
        raise ValueError("ground set has repeated elements")
    v = len(items)
    if alpha < 1 or v == 0 or v % alpha:
        raise NotDivisible(f"alpha={alpha} does not divide ground-set size {v}")
    base = _canonical(v, alpha)
    classes = tuple(tuple(tuple(items[i - 1] for i in blk) for blk in cls) for cls in base)
    return Factorization(ground=items, alpha=alpha, classes=classes)


def locate(f: Factorization, block) -> tuple[int, int]:
    """1-based ``(class, position)`` of ``block`` in ``f``."""
    key = tuple(sorted(block))
    try:
        return f._index[key]
    except KeyError:
        raise BlockNotFound(f"{set(key)} is not an {f.alpha}-subset of {set(f.ground)}") from None
