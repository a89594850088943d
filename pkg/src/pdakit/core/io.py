"""Plain-text array format.

::

    MIMOPDA 1
    G 2 L 3 K 4 F 8 Z 2 S 4
    * 1 1 3
    ...

Lines starting with ``#`` are comments. Output is LF-terminated with no
trailing whitespace, so write -> read -> write is byte-identical.
"""

from __future__ import annotations

import os
from typing import TextIO

import numpy as np

from ..errors import MalformedArray
from .model import STAR, PdaArray

MAGIC = "MIMOPDA 1"
HEADER_KEYS = ("G", "L", "K", "F", "Z", "S")


def dumps(P: PdaArray, comments: list[str] | tuple[str, ...] = ()) -> str:
    lines = [MAGIC]
    lines += ["# " + c if c else "#" for c in comments]
    lines.append(" ".join(f"{k} {v}" for k, v in zip(HEADER_KEYS, P.params)))
    for row in P.entries:
        lines.append(" ".join("*" if v == STAR else str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def loads(text: str) -> PdaArray:
    lines = [ln for ln in text.split("\n") if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0].strip() != MAGIC:
        raise MalformedArray(f"first line must be '{MAGIC}'")
    if len(lines) < 2:
        raise MalformedArray("missing parameter header line")
    tokens = lines[1].split()
    if len(tokens) != 12 or tuple(tokens[0::2]) != HEADER_KEYS:
        raise MalformedArray("header must read 'G <int> L <int> K <int> F <int> Z <int> S <int>'")
    try:
        G, L, K, F, Z, S = (int(x) for x in tokens[1::2])
    except ValueError as exc:
        raise MalformedArray(f"non-integer header value: {exc}") from None
    body = lines[2:]
    if len(body) != F:
        raise MalformedArray(f"header declares F={F} rows, file has {len(body)}")
    grid = np.zeros((F, K), dtype=np.int64)
    for r, line in enumerate(body):
        cells = line.split()
        if len(cells) != K:
            raise MalformedArray(f"row {r + 1} has {len(cells)} tokens, expected K={K}")
        for c, tok in enumerate(cells):
            if tok == "*":
                continue
            if not tok.isdigit() or not 1 <= int(tok) <= S:
                raise MalformedArray(f"row {r + 1} column {c + 1}: token {tok!r} is not '*' or in [1..{S}]")
            grid[r, c] = int(tok)
    # A declared Z that disagrees with the grid is left for validate() to report as C1.
    return PdaArray(G=G, L=L, S=S, entries=grid)


def write_array(P: PdaArray, path: str | os.PathLike, comments=()) -> None:
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(dumps(P, comments))


def read_array(path: str | os.PathLike) -> PdaArray:
    with open(path, encoding="ascii") as fh:
        return load(fh)


def load(fh: TextIO) -> PdaArray:
    return loads(fh.read())
