"""Checking conditions C1-C4 and extracting per-symbol subarrays.

Row and column indices in this module are 0-based.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from ..errors import UnknownSymbol
from .model import STAR, PdaArray
from .numbers import rho_of, tau_of


@dataclass(frozen=True)
class Violation:
    condition: str
    symbol: int | None
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()
    detail: str = ""

    def describe(self) -> str:
        """One-line, 1-based rendering used by the CLI."""
        parts = [self.condition]
        if self.symbol is not None:
            parts.append(f"symbol={self.symbol}")
        if self.rows:
            parts.append("rows=" + ",".join(str(r + 1) for r in self.rows))
        if self.cols:
            parts.append("cols=" + ",".join(str(c + 1) for c in self.cols))
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass(frozen=True)
class ValidationReport:
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool
    c4a_ok: bool
    c4b_ok: bool
    z_per_column: tuple[int, ...]
    violations: tuple[Violation, ...] = ()
    mu: int = 0

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok and self.c4a_ok and self.c4b_ok


@dataclass(frozen=True)
class SymbolBlock:
    """The subarray of rows and columns containing one symbol.

    ``nonstar_cols_per_row[i]`` holds positions into ``col_ids`` (not raw
    column numbers) at which row ``row_ids[i]`` is not a star.
    """

    symbol: int
    row_ids: tuple[int, ...]
    col_ids: tuple[int, ...]
    nonstar_cols_per_row: tuple[frozenset[int], ...]
    s_positions: tuple[tuple[int, int], ...] = field(default=())


def symbol_positions(P: PdaArray):
    """Yield ``(s, rows, cols)`` for every symbol present, rows sorted row-major."""
    f, k = np.nonzero(P.entries)
    s = P.entries[f, k]
    order = np.argsort(s, kind="stable")
    f, k, s = f[order], k[order], s[order]
    if len(s) == 0:
        return
    cuts = np.flatnonzero(np.diff(s)) + 1
    for fs, ks, ss in zip(np.split(f, cuts), np.split(k, cuts), np.split(s, cuts)):
        yield int(ss[0]), fs, ks


def _block_scan(P: PdaArray, nonstar: np.ndarray, fs: np.ndarray, ks: np.ndarray):
    rows = np.unique(fs)
    cols = np.unique(ks)
    sub = nonstar[np.ix_(rows, cols)]
    return rows, cols, sub


def validate(P: PdaArray) -> ValidationReport:
    """Evaluate C1, C2, C3, C4-a and C4-b, recording a witness per failure."""
    G, L, S = P.G, P.L, P.S
    tau, rho = tau_of(G, L), rho_of(G, L)
    E = P.entries
    nonstar = E != STAR
    violations: list[Violation] = []

    z = tuple(int(c) for c in (~nonstar).sum(axis=0))
    c1 = len(set(z)) == 1
    if not c1:
        violations.append(Violation("C1", None, cols=tuple(range(P.K)),
                                    detail="stars per column=" + ",".join(map(str, z))))

    present = set()
    c3 = c4a = c4b = True
    mu = 0
    for s, fs, ks in symbol_positions(P):
        present.add(s)
        col_counts = np.bincount(ks, minlength=P.K)
        for k in np.flatnonzero(col_counts > G):
            c3 = False
            violations.append(Violation("C3", s, rows=tuple(int(x) for x in fs[ks == k]),
                                        cols=(int(k),),
                                        detail=f"appears {int(col_counts[k])} times > G={G}"))
        rows, cols, sub = _block_scan(P, nonstar, fs, ks)
        widths = sub.sum(axis=1)
        for i in np.flatnonzero(widths > tau):
            c4a = False
            violations.append(Violation("C4a", s, rows=(int(rows[i]),), cols=tuple(int(c) for c in cols),
                                        detail=f"{int(widths[i])} integer entries > ceil(L/G)={tau}"))
        keys = [sub[i].tobytes() for i in range(len(rows))]
        pos = np.searchsorted(rows, fs)
        groups = defaultdict(list)
        for p, f, k in zip(pos, fs, ks):
            groups[(int(k), keys[p])].append(int(f))
        for (k, _), members in groups.items():
            mu = max(mu, len(members))
            if len(members) > rho:
                c4b = False
                violations.append(Violation("C4b", s, rows=tuple(members), cols=(k,),
                                            detail=f"{len(members)} rows share one non-star set > rho={rho}"))

    missing = [s for s in range(1, S + 1) if s not in present]
    c2 = not missing
    if missing:
        violations.append(Violation("C2", missing[0],
                                    detail=f"{len(missing)} symbol(s) in [1..{S}] never occur"))

    return ValidationReport(c1_ok=c1, c2_ok=c2, c3_ok=c3, c4a_ok=c4a, c4b_ok=c4b,
                            z_per_column=z, violations=tuple(violations), mu=mu)


def consistency_number(P: PdaArray) -> int:
    """Largest set of rows carrying one symbol in one column with identical non-star sets."""
    return validate(P).mu


def symbol_block(P: PdaArray, s: int) -> SymbolBlock:
    if not 1 <= s <= P.S:
        raise UnknownSymbol(f"symbol {s} outside [1..{P.S}]")
    fs, ks = np.nonzero(P.entries == s)
    if len(fs) == 0:
        raise UnknownSymbol(f"symbol {s} does not occur in the array")
    rows, cols, sub = _block_scan(P, P.entries != STAR, fs, ks)
    return SymbolBlock(
        symbol=s,
        row_ids=tuple(int(r) for r in rows),
        col_ids=tuple(int(c) for c in cols),
        nonstar_cols_per_row=tuple(frozenset(int(j) for j in np.flatnonzero(row)) for row in sub),
        s_positions=tuple((int(f), int(k)) for f, k in zip(fs, ks)),
    )
