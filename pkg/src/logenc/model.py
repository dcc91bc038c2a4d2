"""Problem instance types and classical objectives.

Graphs are stored as immutable edge lists; every matrix (Laplacian, QUBO,
adjacency) is a dense ``numpy`` array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "WeightedGraph",
    "build_laplacian",
    "cut_value",
    "qubo_value",
    "pad_to_power_of_two",
    "symmetrize",
    "as_spins",
    "as_binary",
    "is_power_of_two",
]


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Vertex count, at least 1.
    edges : sequence of (u, v, w)
        Undirected edges. Endpoints are normalized so that ``u < v``;
        self-loops and repeated pairs are rejected.
    node_weights : sequence of float, optional
        Per-vertex weights, used by the weighted independent set problem.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...] = ()
    node_weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n}")
        seen = set()
        normalized = []
        for edge in self.edges:
            u, v, w = edge
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if not math.isfinite(w):
                raise ValueError(f"edge ({u}, {v}) has non-finite weight {w}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            normalized.append((u, v, w))
        object.__setattr__(self, "edges", tuple(normalized))
        if self.node_weights is not None:
            nw = tuple(float(x) for x in self.node_weights)
            if len(nw) != self.n:
                raise ValueError(f"expected {self.n} node weights, got {len(nw)}")
            if not all(math.isfinite(x) for x in nw):
                raise ValueError("node weights must be finite")
            object.__setattr__(self, "node_weights", nw)

    @classmethod
    def unweighted(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "WeightedGraph":
        return cls(n, tuple((u, v, 1.0) for u, v in pairs))

    @classmethod
    def complete(cls, n: int) -> "WeightedGraph":
        return cls.unweighted(n, ((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> "WeightedGraph":
        adj = np.asarray(adj, dtype=float)
        n = adj.shape[0]
        iu, ju = np.nonzero(np.triu(adj, 1))
        return cls(n, tuple((int(i), int(j), float(adj[i, j])) for i, j in zip(iu, ju)))

    def with_node_weights(self, weights: Sequence[float]) -> "WeightedGraph":
        return WeightedGraph(self.n, self.edges, tuple(weights))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = a[v, u] = w
        return a

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u, v, _ in self.edges}

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set()

    def neighbor_sets(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs


def is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


def build_laplacian(g: WeightedGraph) -> np.ndarray:
    """Weighted Laplacian: weighted degree on the diagonal, ``-w_ij`` off it."""
    a = g.adjacency()
    return np.diag(a.sum(axis=1)) - a


def as_spins(x: Sequence[int] | np.ndarray) -> np.ndarray:
    s = np.asarray(x)
    if s.ndim != 1 or not np.all(np.abs(s) == 1):
        raise ValueError("spin assignment must be a vector of +1/-1 entries")
    return s.astype(np.int64)


def as_binary(x: Sequence[int] | np.ndarray) -> np.ndarray:
    b = np.asarray(x)
    if b.ndim != 1 or not np.all((b == 0) | (b == 1)):
        raise ValueError("binary assignment must be a vector of 0/1 entries")
    return b.astype(np.int64)


def cut_value(g: WeightedGraph, x: Sequence[int] | np.ndarray) -> float:
    """Total weight of edges whose endpoints carry opposite spins (``x^T L x / 4``)."""
    s = as_spins(x)
    if len(s) != g.n:
        raise ValueError(f"assignment has length {len(s)}, graph has {g.n} vertices")
    lap = build_laplacian(g)
    return float(s @ lap @ s) / 4.0


def qubo_value(q: np.ndarray, x: Sequence[int] | np.ndarray) -> float:
    """Evaluate ``x^T Q x`` for a binary vector ``x``."""
    q = np.asarray(q, dtype=float)
    b = as_binary(x)
    if len(b) != q.shape[0]:
        raise ValueError(f"assignment has length {len(b)}, QUBO has dimension {q.shape[0]}")
    return float(b @ q @ b)


def symmetrize(q: np.ndarray) -> np.ndarray:
    """Return ``(Q + Q^T) / 2``; the quadratic form over any ``x`` is unchanged."""
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {q.shape}")
    return (q + q.T) / 2.0


def pad_to_power_of_two(m: np.ndarray) -> np.ndarray:
    """Embed a square matrix top-left in a zero matrix of the next power-of-two size."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    dim = m.shape[0]
    target = 1 << (dim - 1).bit_length()
    if target == dim:
        return m
    out = np.zeros((target, target), dtype=m.dtype)
    out[:dim, :dim] = m
    return out
