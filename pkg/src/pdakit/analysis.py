"""Closed-form parameters, the sum-DoF bound, tiny exhaustive oracles and
subpacketization comparisons.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .combinatorics import binomial
from .constructions.hybrid import hybrid_params
from .core.model import PdaArray
from .core.numbers import ceil_div, dof_upper_bound as _bound, rho_of, tau_of
from .core.validate import validate
from .errors import BadParams, DomainError, TooLarge

FAMILIES = ("tst", "square", "gtst", "hybrid")


@dataclass(frozen=True)
class BoundInput:
    G: int
    L: int
    K: int
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if not 0 <= self.gamma <= 1:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")

    @classmethod
    def from_t(cls, G: int, L: int, K: int, t: int) -> BoundInput:
        return cls(G, L, K, Fraction(t, K))


def dof_upper_bound(G, L=None, K=None, gamma=None) -> Fraction:
    """``min{KG, GK*gamma + G*ceil(L/G)}``; accepts a ``BoundInput`` or four values."""
    if isinstance(G, BoundInput):
        G, L, K, gamma = G.G, G.L, G.K, G.gamma
    return _bound(G, L, K, gamma)


def tmma_opt(G: int, L: int, K: int, t: int) -> tuple[int, int | None, int | None]:
    """Exhaustive maximum of ``Omega * beta`` under the multi-antenna feasibility constraint."""
    if not 1 <= t < K:
        raise BadParams(f"need 1 <= t < K, got K={K}, t={t}")
    best = (0, None, None)
    for omega in range(t + 1, K + 1):
        c = binomial(omega - 1, t)
        cap = min(Fraction(G), Fraction(L * c, 1 + (omega - t - 1) * c))
        for beta in range(1, G + 1):
            if beta <= cap and omega * beta > best[0]:
                best = (omega * beta, omega, beta)
    return best


def _tst_check(G, L, K, t):
    if t < 1 or t + tau_of(G, L) > K:
        raise BadParams(f"need t >= 1 and t + ceil(L/G) <= K, got G={G}, L={L}, K={K}, t={t}")


def f_tst(G: int, L: int, K: int, t: int) -> int:
    _tst_check(G, L, K, t)
    return binomial(K, t) * binomial(K - t - 1, tau_of(G, L) - 1) * G


def z_tst(G: int, L: int, K: int, t: int) -> int:
    _tst_check(G, L, K, t)
    return binomial(K - 1, t - 1) * binomial(K - t - 1, tau_of(G, L) - 1) * G


def s_tst(G: int, L: int, K: int, t: int) -> int:
    _tst_check(G, L, K, t)
    tau = tau_of(G, L)
    return binomial(K, t + tau) * binomial(t + tau - 1, t)


def f_hybrid(G: int, L: int, L1: int, K1: int, t1: int) -> tuple[int, int, int]:
    """``(F, Z, S)`` of the hybrid array."""
    p = hybrid_params(G, L, L1, K1, t1)
    scale = G * p.lam1 * p.lam3 // math.gcd(G, p.lam2)
    copies = Fraction(p.m * (t1 + p.tau1), p.tau2) + 1
    assert copies.denominator == 1
    F = scale * int(copies) * binomial(K1, t1)
    Z = scale * int(copies) * binomial(K1 - 1, t1 - 1)
    S = p.m * p.lam2 * p.lam3 // math.gcd(G, p.lam2) * (t1 + p.tau1) // p.tau2 * binomial(K1, t1 + p.tau1)
    return F, Z, S


def binary_entropy(gamma) -> float:
    g = float(gamma)
    if g in (0.0, 1.0):
        return 0.0
    return -g * math.log2(g) - (1 - g) * math.log2(1 - g)


def ratio_exact(G: int, L: int, L1: int, K1: int, t1: int) -> float:
    """Hybrid subpacketization over the TST one at ``K = m K1`` and ``t = m t1``."""
    p = hybrid_params(G, L, L1, K1, t1)
    F_h = f_hybrid(G, L, L1, K1, t1)[0]
    return float(Fraction(F_h, f_tst(G, L, p.m * K1, p.m * t1)))


def ratio_asymptotic(G: int, L: int, L1: int, K1: int, t1: int) -> float:
    """Leading-order term ``2^{-(m-1) K1 H(gamma)} K1^{-((m-1) tau1 + tau2)}``."""
    p = hybrid_params(G, L, L1, K1, t1)
    h = binary_entropy(Fraction(t1, K1))
    return 2.0 ** (-(p.m - 1) * K1 * h) * float(K1) ** (-((p.m - 1) * p.tau1 + p.tau2))


# ---------------------------------------------------------------- comparisons

@dataclass(frozen=True)
class GridPoint:
    G: int
    L: int
    K: int
    t: int
    L1: int | None = None


@dataclass(frozen=True)
class CompareRow:
    family: str
    G: int
    L: int
    K: int
    gamma: Fraction
    F: int | None
    S: int | None
    sum_dof: Fraction | None
    ratio_to_baseline: float | None

    @property
    def skipped(self) -> bool:
        return self.F is None


def hybrid_point(G: int, L: int, L1: int, K1: int, t1: int) -> GridPoint:
    m = tau_of(G, L) // tau_of(G, L1)
    return GridPoint(G=G, L=L, K=m * K1, t=m * t1, L1=L1)


def family_parameters(family: str, pt: GridPoint) -> tuple[int, int, int]:
    """Closed-form ``(F, Z, S)``; raises ``DomainError`` when the family does not apply."""
    G, L, K, t = pt.G, pt.L, pt.K, pt.t
    tau, rho = tau_of(G, L), rho_of(G, L)
    if family == "tst":
        F = f_tst(G, L, K, t)
        if ceil_div(G, binomial(t + L // G, t)) > rho:
            raise BadParams("TST consistency condition fails")
        return F, z_tst(G, L, K, t), s_tst(G, L, K, t)
    if family == "square":
        if not 1 <= t < K or K > tau + t or rho > K - t:
            raise BadParams("square construction conditions fail")
        return G * K, G * t, K - t
    if pt.L1 is None:
        raise BadParams(f"family {family} needs L1")
    tau1 = tau_of(G, pt.L1)
    m = tau // tau1
    if m < 1 or K % m or t % m:
        raise BadParams("K and t must split evenly into m groups")
    K1, t1 = K // m, t // m
    if family == "gtst":
        if m * tau1 != tau:
            raise BadParams("need m * ceil(L1/G) = ceil(L/G)")
        F1 = f_tst(G, pt.L1, K1, t1)
        mu = ceil_div(G, binomial(t1 + tau1 - 1, t1))
        if ceil_div(G, binomial(t1 + pt.L1 // G, t1)) > rho_of(G, pt.L1) or rho < mu:
            raise BadParams("grouping conditions fail")
        return F1, z_tst(G, pt.L1, K1, t1), s_tst(G, pt.L1, K1, t1)
    if family == "hybrid":
        return f_hybrid(G, L, pt.L1, K1, t1)
    raise BadParams(f"unknown family {family!r}")


def sweep_compare(families: Iterable[str], grid: Iterable[GridPoint],
                  baseline: str = "tst") -> list[CompareRow]:
    """One row per (grid point, family), grid-major; infeasible points have ``F=None``."""
    families = list(families)
    rows = []
    for pt in grid:
        params = {}
        for fam in dict.fromkeys(families + [baseline]):
            try:
                params[fam] = family_parameters(fam, pt)
            except DomainError:
                params[fam] = None
        base = params[baseline]
        for fam in families:
            gamma = Fraction(pt.t, pt.K)
            got = params[fam]
            if got is None:
                rows.append(CompareRow(fam, pt.G, pt.L, pt.K, gamma, None, None, None, None))
                continue
            F, Z, S = got
            ratio = float(Fraction(F, base[0])) if base else None
            rows.append(CompareRow(fam, pt.G, pt.L, pt.K, gamma, F, S,
                                   Fraction(pt.K * (F - Z), S), ratio))
    return rows


def _decimal(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else repr(float(x))


def write_compare_csv(rows: Iterable[CompareRow], path_or_file) -> None:
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", newline="", encoding="ascii") if own else path_or_file
    try:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["family", "G", "L", "K", "gamma", "F", "S", "sum_dof", "ratio"])
        for r in rows:
            if r.skipped:
                out.writerow([r.family, r.G, r.L, r.K, _decimal(r.gamma), "skip", "skip", "skip", "skip"])
            else:
                ratio = "" if r.ratio_to_baseline is None else f"{r.ratio_to_baseline:.6e}"
                out.writerow([r.family, r.G, r.L, r.K, _decimal(r.gamma), r.F, r.S,
                              _decimal(r.sum_dof), ratio])
    finally:
        if own:
            fh.close()


# ------------------------------------------------------------ tiny oracles

def min_s_lower_bound(G: int, L: int, K: int, F: int, Z: int) -> Fraction:
    """Counting bound ``S >= n F / (F G ceil(L/G) + G K Z)`` with ``n = K(F-Z)``."""
    n = K * (F - Z)
    return Fraction(n * F, F * G * tau_of(G, L) + G * K * Z)


def valid_arrays(G: int, L: int, K: int, F: int, Z: int,
                 max_symbols: int | None = None) -> Iterator[PdaArray]:
    """Every valid array up to row permutation and symbol renaming.

    Column 1 keeps its stars in the top ``Z`` rows; symbols are assigned as
    restricted-growth strings so each labeling is produced once.
    """
    if F * K > 12:
        raise TooLarge(f"F*K = {F * K} exceeds the exhaustive-search limit of 12")
    if not 0 <= Z <= F:
        return
    first = tuple(range(Z))
    patterns = list(combinations(range(F), Z))
    for rest in _product(patterns, K - 1):
        stars = np.zeros((F, K), dtype=bool)
        stars[list(first), 0] = True
        for c, pat in enumerate(rest, 1):
            stars[list(pat), c] = True
        cells = [(f, k) for f in range(F) for k in range(K) if not stars[f, k]]
        yield from _labelings(G, L, F, K, cells, max_symbols)


def _product(patterns, n):
    if n == 0:
        yield ()
        return
    for head in patterns:
        for tail in _product(patterns, n - 1):
            yield (head,) + tail


def _labelings(G, L, F, K, cells, max_symbols):
    grid = np.zeros((F, K), dtype=np.int64)
    per_col: dict[tuple[int, int], int] = {}
    limit = len(cells) if max_symbols is None else max_symbols

    def rec(i, used):
        if i == len(cells):
            if used == 0:
                return
            P = PdaArray(G=G, L=L, S=used, entries=grid)
            if validate(P).ok:
                yield PdaArray(G=G, L=L, S=used, entries=grid.copy())
            return
        f, k = cells[i]
        for s in range(1, min(used + 1, limit) + 1):
            if per_col.get((s, k), 0) >= G:
                continue
            grid[f, k] = s
            per_col[(s, k)] = per_col.get((s, k), 0) + 1
            yield from rec(i + 1, max(used, s))
            per_col[(s, k)] -= 1
            grid[f, k] = 0

    if not cells:
        return
    yield from rec(0, 0)


def brute_force_min_S(G: int, L: int, K: int, F: int, Z: int) -> int | None:
    """Smallest symbol count of any valid ``(G, L, K, F, Z, S)`` array, by exhaustion."""
    if F * K > 12:
        raise TooLarge(f"F*K = {F * K} exceeds the exhaustive-search limit of 12")
    n = K * (F - Z)
    for target in range(1, n + 1):
        for P in valid_arrays(G, L, K, F, Z, max_symbols=target):
            return P.S
    return None
