"""Exact and heuristic classical baselines plus score normalization.

Exhaustive searches run on the compiled kernels when available (see
:mod:`logenc.kernels`); every oracle refuses instances beyond its size cap
with :class:`CapacityError` instead of running for hours.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from . import kernels
from .model import WeightedGraph, cut_value
from .reductions import PartitionInstance, TwoSatInstance, satisfied_weight

__all__ = [
    "CapacityError",
    "OracleResult",
    "brute_force_maxcut",
    "brute_force_partition",
    "brute_force_qubo",
    "brute_force_mwis",
    "brute_force_max2sat",
    "brute_force_clique",
    "exact_max_clique",
    "local_search_maxcut",
    "partition_norm",
    "percent_of_optimal",
]

MAX_ENUM = 26
MAX_SAT_VARS = 22
MAX_CLIQUE_N = 64


class CapacityError(ValueError):
    """Instance too large for exhaustive search."""


@dataclass(frozen=True)
class OracleResult:
    optimal_value: float
    witness: Any
    exhaustive: bool = True


def _check_size(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapacityError(
            f"{what} of size {n} exceeds the exhaustive limit {cap}; use local_search_maxcut"
        )


def _mask_to_spins(mask: int, n: int) -> np.ndarray:
    return np.array([-1 if (mask >> i) & 1 else 1 for i in range(n)], dtype=np.int64)


def brute_force_maxcut(g: WeightedGraph) -> OracleResult:
    """Exact MaxCut by Gray-code enumeration with vertex 0 pinned. Witness: spin vector."""
    _check_size(g.n, MAX_ENUM, "MaxCut")
    _, mask = kernels.maxcut_enumerate(g.adjacency())
    x = _mask_to_spins(mask, g.n)
    return OracleResult(cut_value(g, x), x)


def brute_force_partition(p: PartitionInstance) -> OracleResult:
    """Exact minimum difference. Witness: indices on the side holding element 0."""
    n = len(p.weights)
    _check_size(n, MAX_ENUM, "Partition")
    best, mask = kernels.partition_enumerate(np.array(p.weights))
    side_a = tuple(i for i in range(n) if not (mask >> i) & 1)
    return OracleResult(best, side_a)


def brute_force_qubo(q: np.ndarray) -> OracleResult:
    """Exact minimum of ``x^T Q x`` over binary vectors. Witness: 0/1 vector."""
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    _check_size(n, MAX_ENUM, "QUBO")
    _, mask = kernels.qubo_enumerate(q)
    x = np.array([(mask >> i) & 1 for i in range(n)], dtype=np.int64)
    return OracleResult(float(x @ q @ x), x)


def brute_force_mwis(g: WeightedGraph) -> OracleResult:
    """Exact maximum weight independent set by branch and bound over bitmasks."""
    if g.node_weights is None:
        raise ValueError("graph has no node weights")
    _check_size(g.n, MAX_ENUM, "MWIS")
    n = g.n
    w = list(g.node_weights)
    closed = [1 << v for v in range(n)]
    for u, v, _ in g.edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    best_val = 0.0
    best_set = 0

    def bound(cand: int) -> float:
        total = 0.0
        while cand:
            low = cand & -cand
            total += max(w[low.bit_length() - 1], 0.0)
            cand ^= low
        return total

    def search(cand: int, chosen: int, value: float) -> None:
        nonlocal best_val, best_set
        if value > best_val:
            best_val, best_set = value, chosen
        if not cand or value + bound(cand) <= best_val:
            return
        v = (cand & -cand).bit_length() - 1
        search(cand & ~closed[v], chosen | (1 << v), value + w[v])
        search(cand & ~(1 << v), chosen, value)

    search((1 << n) - 1, 0, 0.0)
    witness = tuple(v for v in range(n) if (best_set >> v) & 1)
    return OracleResult(float(sum(w[v] for v in witness)), witness)


def brute_force_max2sat(s: TwoSatInstance) -> OracleResult:
    """Exact maximum satisfied weight over all ``2^n_vars`` assignments."""
    _check_size(s.n_vars, MAX_SAT_VARS, "Max2SAT")
    n = s.n_vars
    best_val, best_idx = 0.0, 0
    chunk = 1 << 16
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        vals = np.zeros(len(idx))
        for p, q, w in s.clauses:
            tp = ((idx >> (abs(p) - 1)) & 1).astype(bool)
            tq = ((idx >> (abs(q) - 1)) & 1).astype(bool)
            if p < 0:
                tp = ~tp
            if q < 0:
                tq = ~tq
            vals += w * (tp | tq)
        k = int(np.argmax(vals))
        if start == 0 or vals[k] > best_val:
            best_val, best_idx = float(vals[k]), int(idx[k])
    assignment = tuple(bool((best_idx >> i) & 1) for i in range(n))
    return OracleResult(satisfied_weight(s, assignment), assignment)


def exact_max_clique(g: WeightedGraph) -> OracleResult:
    """Maximum clique by branch and bound with a greedy-coloring bound (bitsets)."""
    _check_size(g.n, MAX_CLIQUE_N, "Clique")
    n = g.n
    adj = [0] * n
    for u, v, _ in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best: list[int] = [1 << 0] if n else [0]
    best_size = [1 if n else 0]

    def color_order(cand: int) -> list[tuple[int, int]]:
        # greedy sequential coloring; returns (vertex, color) in increasing color
        order = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v)
                avail &= ~adj[v]
                uncolored &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(clique: int, size: int, cand: int) -> None:
        order = color_order(cand)
        for v, color in reversed(order):
            if size + color <= best_size[0]:
                return
            new_clique = clique | (1 << v)
            new_cand = cand & adj[v]
            if new_cand:
                expand(new_clique, size + 1, new_cand)
            elif size + 1 > best_size[0]:
                best_size[0] = size + 1
                best[0] = new_clique
            cand &= ~(1 << v)

    if n:
        expand(0, 0, (1 << n) - 1)
    witness = tuple(v for v in range(n) if (best[0] >> v) & 1)
    return OracleResult(len(witness), witness)


def brute_force_clique(g: WeightedGraph) -> OracleResult:
    """Maximum clique by plain subset enumeration; cross-checks :func:`exact_max_clique`."""
    _check_size(g.n, 20, "Clique enumeration")
    n = g.n
    adj = [0] * n
    for u, v, _ in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= bin(best).count("1"):
            continue
        if all(mask & ~(adj[v] | (1 << v)) == 0 for v in range(n) if (mask >> v) & 1):
            best = mask
    witness = tuple(v for v in range(n) if (best >> v) & 1)
    return OracleResult(len(witness), witness)


def local_search_maxcut(g: WeightedGraph, seed: int = 0, restarts: int = 10) -> OracleResult:
    """Best single-flip local optimum over seeded random starts (not exhaustive)."""
    rng = np.random.default_rng(seed)
    adj = g.adjacency()
    best_x = np.ones(g.n, dtype=np.int64)
    best_val = cut_value(g, best_x)
    for _ in range(max(1, restarts)):
        x0 = rng.choice([-1, 1], size=g.n)
        x = kernels.local_search_maxcut(adj, x0)
        val = cut_value(g, x)
        if val > best_val:
            best_val, best_x = val, x
    return OracleResult(best_val, best_x, exhaustive=False)


def partition_norm(diff: float, n_numbers: int) -> float:
    """Normalized split quality ``(50N - diff) / (50N)``; 1.0 is a perfect split."""
    if n_numbers < 1:
        raise ValueError("need at least one number")
    scale = 50.0 * n_numbers
    return (scale - diff) / scale


def percent_of_optimal(value: float, optimal: float) -> float:
    if optimal <= 0:
        raise ValueError(f"optimal value must be positive, got {optimal}")
    return value / optimal
