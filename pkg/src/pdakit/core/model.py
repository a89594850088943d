"""The placement delivery array data model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import MalformedArray

STAR = 0
"""Cell value encoding ``*``; symbol ids are the positive integers."""


@dataclass(frozen=True, eq=False)
class PdaArray:
    """An ``F x K`` grid of stars and symbol ids with antenna counts ``(G, L)``.

    Rows index packets, columns index users. ``entries`` is stored as a
    read-only ``int64`` matrix where ``STAR`` (0) marks a cached packet.
    """

    G: int
    L: int
    S: int
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise MalformedArray(f"entries must be a 2-D grid, got ndim={arr.ndim}")
        F, K = arr.shape
        if F < 1 or K < 1:
            raise MalformedArray(f"array must have at least one row and column, got {F}x{K}")
        if self.G < 1 or self.L < 1:
            raise MalformedArray(f"G and L must be positive, got G={self.G}, L={self.L}")
        if self.S < 0:
            raise MalformedArray(f"S must be nonnegative, got {self.S}")
        if arr.min() < 0:
            raise MalformedArray("symbol ids must be positive")
        if arr.max() > self.S:
            raise MalformedArray(f"symbol id {int(arr.max())} exceeds S={self.S}")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], G: int, L: int, S: int | None = None) -> PdaArray:
        """Build from nested rows whose cells are ``'*'``/``None`` or ints."""
        grid = []
        width = None
        for r, row in enumerate(rows):
            cells = [STAR if c in ("*", None) else int(c) for c in row]
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise MalformedArray(f"row {r + 1} has {len(cells)} cells, expected {width}")
            grid.append(cells)
        if not grid:
            raise MalformedArray("array has no rows")
        arr = np.array(grid, dtype=np.int64)
        if arr.min() < 0:
            raise MalformedArray("symbol ids must be positive")
        if S is None:
            S = int(arr.max())
        return cls(G=G, L=L, S=S, entries=arr)

    @property
    def F(self) -> int:
        return self.entries.shape[0]

    @property
    def K(self) -> int:
        return self.entries.shape[1]

    @property
    def Z(self) -> int:
        """Star count of the first column (the common count when C1 holds)."""
        return int(np.count_nonzero(self.entries[:, 0] == STAR))

    @property
    def star_mask(self) -> np.ndarray:
        return self.entries == STAR

    @property
    def params(self) -> tuple[int, int, int, int, int, int]:
        return (self.G, self.L, self.K, self.F, self.Z, self.S)

    def rows(self) -> list[list]:
        """Nested-list view with ``'*'`` for stars."""
        return [["*" if v == STAR else int(v) for v in row] for row in self.entries]

    def with_antennas(self, G: int | None = None, L: int | None = None) -> PdaArray:
        return PdaArray(G=self.G if G is None else G, L=self.L if L is None else L,
                        S=self.S, entries=self.entries)

    def __eq__(self, other):
        if not isinstance(other, PdaArray):
            return NotImplemented
        return (self.G, self.L, self.S) == (other.G, other.L, other.S) and np.array_equal(
            self.entries, other.entries)

    __hash__ = None

    def __repr__(self):
        return f"PdaArray(G={self.G}, L={self.L}, K={self.K}, F={self.F}, Z={self.Z}, S={self.S})"


def relabel_symbols(P: PdaArray) -> PdaArray:
    """Renumber symbols ``1..S'`` by first occurrence in row-major order."""
    flat = P.entries.ravel()
    ids = flat[flat != STAR]
    _, first = np.unique(ids, return_index=True)
    order = ids[np.sort(first)]
    lut = np.zeros(P.S + 1, dtype=np.int64)
    lut[order] = np.arange(1, len(order) + 1)
    return PdaArray(G=P.G, L=P.L, S=len(order), entries=lut[P.entries])
