"""Noiseless one-shot zero-forcing delivery driven by an array.

Every symbol ``s`` is one transmission block. Each occurrence of ``s`` at
``(row f, column k)`` is a packet wanted by user ``k``; its precoder must
vanish on every other served user that has not cached row ``f``. Users
cancel cached packets, then solve a small linear system for their own.

Indices on the Python side are 0-based; the CSV dump is 1-based.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core.model import STAR, PdaArray
from .core.validate import symbol_positions, validate
from .errors import DimensionMismatch, InvalidArray, NullSpaceExhausted, RankDeficient

RANK_TOL = 1e-8


@dataclass(frozen=True)
class Packet:
    user: int
    row: int
    interferers: frozenset[int]


@dataclass(frozen=True)
class DeliveryBlock:
    symbol: int
    served_users: tuple[int, ...]
    packets: tuple[Packet, ...]

    def packets_of(self, user: int) -> list[int]:
        return [i for i, p in enumerate(self.packets) if p.user == user]


@dataclass(frozen=True)
class ChannelSet:
    matrices: np.ndarray  # (K, G, L) complex
    seed: int | None = None

    @property
    def K(self) -> int:
        return self.matrices.shape[0]

    def __getitem__(self, k: int) -> np.ndarray:
        return self.matrices[k]


def plan_delivery(P: PdaArray) -> list[DeliveryBlock]:
    report = validate(P)
    if not report.ok:
        raise InvalidArray("cannot plan delivery for an invalid array: "
                           + report.violations[0].describe(), report)
    nonstar = P.entries != STAR
    blocks = []
    for s, fs, ks in symbol_positions(P):
        users = np.unique(ks)
        order = np.lexsort((fs, ks))
        fs, ks = fs[order], ks[order]
        hits = nonstar[fs][:, users] & (users[None, :] != ks[:, None])
        packets = tuple(Packet(user=int(k), row=int(f), interferers=frozenset(users[h].tolist()))
                        for f, k, h in zip(fs, ks, hits))
        blocks.append(DeliveryBlock(symbol=s, served_users=tuple(users.tolist()), packets=packets))
    return blocks


def _rng(seed: int, trial: int | None) -> np.random.Generator:
    entropy = [seed] if trial is None else [seed, trial]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    z = rng.standard_normal(tuple(shape) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)


def sample_channels(K: int, G: int, L: int, seed: int, trial: int | None = None) -> ChannelSet:
    """I.i.d. CN(0, 1) channel matrices, one ``G x L`` matrix per user."""
    return ChannelSet(_complex_normal(_rng(seed, trial), (K, G, L)), seed=seed)


def fixed_channels(matrices) -> ChannelSet:
    mats = [np.asarray(m, dtype=np.complex128) for m in matrices]
    if not mats:
        raise DimensionMismatch("at least one channel matrix is required")
    shape = mats[0].shape
    if len(shape) != 2 or any(m.shape != shape for m in mats):
        raise DimensionMismatch("channel matrices must all be 2-D with the same shape, got "
                                + ", ".join(str(m.shape) for m in mats))
    if not all(np.isfinite(m).all() for m in mats):
        raise DimensionMismatch("channel entries must be finite")
    return ChannelSet(np.stack(mats))


def null_space(M: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of ``{v : M v = 0}`` via SVD."""
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    n = M.shape[1]
    if M.size == 0:
        return np.eye(n, dtype=np.complex128)
    _, sv, vh = np.linalg.svd(M, full_matrices=True)
    rank = int(np.count_nonzero(sv > tol * sv[0])) if sv.size and sv[0] > 0 else 0
    return vh[rank:].conj().T


def _interference_basis(interferers: frozenset, ch: ChannelSet, tol: float, cache: dict):
    """Null-space basis of the stacked interferer channels and each column's residual."""
    hit = cache.get(interferers)
    if hit is None:
        L = ch.matrices.shape[2]
        if interferers:
            stacked = ch.matrices[sorted(interferers)].reshape(-1, L)
            basis = null_space(stacked, tol)
            res = np.linalg.norm(stacked @ basis, axis=0) / np.linalg.norm(stacked)
        else:
            basis = np.eye(L, dtype=np.complex128)
            res = np.zeros(L)
        hit = cache[interferers] = (basis, res)
    return hit


def zf_precoders(block: DeliveryBlock, ch: ChannelSet, tol: float = RANK_TOL,
                 cache: dict | None = None, residuals: dict | None = None) -> dict[Packet, np.ndarray]:
    """One unit-norm precoder per packet, orthogonal to every interferer's channel.

    Packets of one user with the same interferer set share a null space and
    take distinct orthonormal basis vectors from it, in packet order. When
    ``residuals`` is given it is filled with each packet's relative residual.
    """
    cache = {} if cache is None else cache
    taken: dict[tuple[int, frozenset], int] = {}
    out = {}
    for p in block.packets:
        basis, res = _interference_basis(p.interferers, ch, tol, cache)
        key = (p.user, p.interferers)
        j = taken.get(key, 0)
        if j >= basis.shape[1]:
            raise NullSpaceExhausted(
                f"block {block.symbol}: user {p.user + 1} needs {j + 1} precoders against "
                f"users {sorted(u + 1 for u in p.interferers)}, null space has dimension "
                f"{basis.shape[1]}", packet=p)
        taken[key] = j + 1
        out[p] = basis[:, j]
        if residuals is not None:
            residuals[p] = float(res[j])
    return out


def zf_residual(p: Packet, v: np.ndarray, ch: ChannelSet) -> float:
    """``||H_bar v|| / ||H_bar||`` for the stacked interferer channel ``H_bar``."""
    if not p.interferers:
        return 0.0
    stacked = np.concatenate([ch[u] for u in sorted(p.interferers)], axis=0)
    return float(np.linalg.norm(stacked @ v) / np.linalg.norm(stacked))


@dataclass
class BlockDecode:
    recovered: dict[Packet, complex]
    errors: dict[Packet, float]
    effective: dict[int, np.ndarray] = field(default_factory=dict)


def decode_block(block: DeliveryBlock, ch: ChannelSet, precoders: dict, payload: dict,
                 cache_mask: np.ndarray, tol: float = RANK_TOL) -> BlockDecode:
    """Simulate reception at every served user and solve for its packets.

    ``cache_mask[f, k]`` is true when user ``k`` caches row ``f``.
    """
    packets = block.packets
    users = np.array(block.served_users)
    V = np.stack([precoders[p] for p in packets], axis=1)
    w = np.array([payload[p] for p in packets], dtype=np.complex128)
    HV = ch.matrices[users] @ V                      # (users, G, packets)
    y = HV @ w
    cached = cache_mask[[p.row for p in packets]][:, users].T
    y = y - np.einsum("ugn,un->ug", HV, cached * w[None, :])
    owner = np.array([p.user for p in packets])
    recovered, errors, effective = {}, {}, {}
    for ui, u in enumerate(block.served_users):
        own = np.flatnonzero(owner == u)
        A = HV[ui][:, own]
        effective[u] = A
        sv = np.linalg.svd(A, compute_uv=False)
        rank = int(np.count_nonzero(sv > tol * sv[0])) if sv.size and sv[0] > 0 else 0
        if rank < len(own):
            raise RankDeficient(f"block {block.symbol}: user {u + 1} effective matrix has rank "
                                f"{rank} < {len(own)}", user=u, block=block.symbol)
        if A.shape[0] == A.shape[1]:
            est = np.linalg.solve(A, y[ui])
        else:
            est = np.linalg.lstsq(A, y[ui], rcond=None)[0]
        err = np.abs(est - w[own]) / np.abs(w[own])
        for i, val, e in zip(own, est, err):
            recovered[packets[i]] = complex(val)
            errors[packets[i]] = float(e)
    return BlockDecode(recovered=recovered, errors=errors, effective=effective)


@dataclass
class SimReport:
    trials: int
    blocks_run: int
    max_zf_residual: float
    max_decode_error: float
    min_precoder_rank_ok: bool
    per_block_dof: list[int]
    success: bool
    mean_block_dof: Fraction
    worst: dict = field(default_factory=dict, repr=False)

    def write_csv(self, path: str | os.PathLike) -> None:
        """Worst residual and error per packet across trials, 1-based indices."""
        with open(path, "w", newline="", encoding="ascii") as fh:
            out = csv.writer(fh, lineterminator="\n")
            out.writerow(["block", "user", "packet_row", "zf_residual", "decode_error"])
            for (s, u, f), (res, err) in sorted(self.worst.items()):
                out.writerow([s, u + 1, f + 1, f"{res:.3e}", f"{err:.3e}"])


def _default_threads() -> int:
    env = os.environ.get("PDAKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _run_trial(P: PdaArray, blocks, seed: int, trial: int, rank_tol: float):
    rng = _rng(seed, trial)
    ch = ChannelSet(_complex_normal(rng, (P.K, P.G, P.L)), seed=seed)
    n_packets = sum(len(b.packets) for b in blocks)
    data = _complex_normal(rng, (n_packets,))
    mask = P.entries == STAR
    cache: dict = {}
    worst = {}
    pos = 0
    for b in blocks:
        payload = {p: data[pos + i] for i, p in enumerate(b.packets)}
        pos += len(b.packets)
        residuals: dict = {}
        try:
            pre = zf_precoders(b, ch, rank_tol, cache, residuals)
            dec = decode_block(b, ch, pre, payload, mask, rank_tol)
        except (NullSpaceExhausted, RankDeficient) as exc:
            exc.args = (f"trial {trial}: {exc.args[0]}",) + exc.args[1:]
            raise
        for p in b.packets:
            worst[(b.symbol, p.user, p.row)] = (residuals[p], dec.errors[p])
    return worst


def simulate(P: PdaArray, seed: int = 0, trials: int = 1, tol: float = 1e-6,
             rank_tol: float = RANK_TOL, threads: int | None = None) -> SimReport:
    """Run ``trials`` independent channel draws; trial ``i`` uses seed ``(seed, i)``.

    ``tol`` bounds the relative decode error for ``success``.
    """
    blocks = plan_delivery(P)
    threads = min(threads or _default_threads(), max(trials, 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: _run_trial(P, blocks, seed, i, rank_tol), range(trials)))
    else:
        results = [_run_trial(P, blocks, seed, i, rank_tol) for i in range(trials)]
    worst: dict = {}
    for res in results:
        for key, (r, e) in res.items():
            r0, e0 = worst.get(key, (0.0, 0.0))
            worst[key] = (max(r0, r), max(e0, e))
    max_res = max((r for r, _ in worst.values()), default=0.0)
    max_err = max((e for _, e in worst.values()), default=0.0)
    dof = [len(b.packets) for b in blocks]
    return SimReport(
        trials=trials,
        blocks_run=len(blocks) * trials,
        max_zf_residual=max_res,
        max_decode_error=max_err,
        min_precoder_rank_ok=True,
        per_block_dof=dof,
        success=trials > 0 and max_err < tol,
        mean_block_dof=Fraction(sum(dof), len(dof)) if dof else Fraction(0),
        worst=worst,
    )
