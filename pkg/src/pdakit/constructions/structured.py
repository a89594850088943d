"""Arrays whose symbols are structured labels (tuples) during construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from ..core.model import STAR, PdaArray, relabel_symbols


@dataclass(frozen=True, eq=False)
class StructuredArray:
    """Integer grid plus a label table: cell value ``i > 0`` means ``labels[i-1]``."""

    G: int
    L: int
    cells: np.ndarray
    labels: tuple

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[Hashable | None]], G: int, L: int) -> StructuredArray:
        """Build from nested rows of labels, ``None`` marking a star."""
        ids: dict = {}
        cells = np.zeros((len(grid), len(grid[0]) if grid else 0), dtype=np.int64)
        for r, row in enumerate(grid):
            for c, lab in enumerate(row):
                if lab is None:
                    continue
                idx = ids.get(lab)
                if idx is None:
                    idx = ids[lab] = len(ids) + 1
                cells[r, c] = idx
        return cls(G=G, L=L, cells=cells, labels=tuple(ids))

    @property
    def F(self) -> int:
        return self.cells.shape[0]

    @property
    def K(self) -> int:
        return self.cells.shape[1]

    @property
    def S(self) -> int:
        return len(self.labels)

    def label_at(self, row: int, col: int):
        v = self.cells[row, col]
        return None if v == STAR else self.labels[v - 1]

    def to_pda(self) -> PdaArray:
        """Dense ids in label-table order (no relabeling)."""
        return PdaArray(G=self.G, L=self.L, S=self.S, entries=self.cells)

    def flatten(self) -> PdaArray:
        return flatten(self)


def flatten(arr: StructuredArray | PdaArray) -> PdaArray:
    """Map symbols bijectively onto ``1..S`` in first-occurrence order."""
    if isinstance(arr, StructuredArray):
        arr = arr.to_pda()
    return relabel_symbols(arr)


def format_label(label) -> str:
    """Compact text form: the subset joined by ``-`` then the tail joined by ``;``."""
    if isinstance(label, tuple) and label and isinstance(label[0], tuple):
        head = "-".join(str(x) for x in label[0])
        return ";".join([head] + [str(x) for x in label[1:]])
    return str(label)
