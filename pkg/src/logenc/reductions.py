"""Polynomial-time reductions onto MaxCut and QUBO, each with a decoder.

Every reduction returns a :class:`ReductionArtifact` whose ``decode`` maps an
assignment of the target problem back to ``(source_solution, source_value)``.

Node layout for 2-SAT graphs: variable ``i`` (1-based) owns node ``2(i-1)``
for the positive literal and ``2(i-1)+1`` for its complement; the ground node
of the gadget construction is ``2 * n_vars``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .model import WeightedGraph, as_binary, as_spins

__all__ = [
    "PartitionInstance",
    "TwoSatInstance",
    "ReductionArtifact",
    "MAX2SAT_MODES",
    "partition_to_maxcut",
    "max2sat_to_maxcut",
    "clique_to_max2sat",
    "clique_to_maxcut",
    "mwis_to_qubo",
    "repair_clique",
    "repair_independent_set",
    "is_clique",
    "is_independent_set",
    "satisfied_weight",
]

MAX2SAT_MODES = ("ground-gadget", "paper-literal")


@dataclass(frozen=True)
class PartitionInstance:
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        w = tuple(int(x) for x in self.weights)
        if any(x < 1 for x in w):
            raise ValueError("partition weights must be positive integers")
        object.__setattr__(self, "weights", w)

    def difference(self, side_a: Sequence[int]) -> int:
        total = sum(self.weights)
        in_a = sum(self.weights[i] for i in side_a)
        return abs(2 * in_a - total)


@dataclass(frozen=True)
class TwoSatInstance:
    """Weighted 2-SAT. Literals are DIMACS style: ``+i`` is ``x_i``, ``-i`` its negation."""

    n_vars: int
    clauses: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self) -> None:
        clean = []
        for p, q, w in self.clauses:
            p, q, w = int(p), int(q), float(w)
            for lit in (p, q):
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"literal {lit} outside variables 1..{self.n_vars}")
            if not w > 0:
                raise ValueError(f"clause weight must be positive, got {w}")
            clean.append((p, q, w))
        object.__setattr__(self, "clauses", tuple(clean))

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.clauses)


def satisfied_weight(s: TwoSatInstance, assignment: Sequence[bool]) -> float:
    """Weight of satisfied clauses; ``assignment[i-1]`` is the value of ``x_i``."""

    def truth(lit: int) -> bool:
        v = bool(assignment[abs(lit) - 1])
        return v if lit > 0 else not v

    return sum(w for p, q, w in s.clauses if truth(p) or truth(q))


@dataclass(frozen=True)
class ReductionArtifact:
    target: Any
    decode: Callable[[Any], tuple[Any, float]]


def _graph_from_weights(n: int, acc: dict[tuple[int, int], float]) -> WeightedGraph:
    return WeightedGraph(n, tuple((u, v, w) for (u, v), w in sorted(acc.items()) if w != 0))


def partition_to_maxcut(p: PartitionInstance) -> ReductionArtifact:
    """Complete graph with edge weights ``w_i * w_j``.

    For every spin vector ``diff(x)^2 == (sum w)^2 - 4 cut(x)``, so the
    maximum cut is the minimum-difference split.
    """
    w = p.weights
    n = len(w)
    if n < 2:
        raise ValueError("partition needs at least two numbers")
    g = WeightedGraph(n, tuple((i, j, w[i] * w[j]) for i in range(n) for j in range(i + 1, n)))

    def decode(spins):
        x = as_spins(spins)
        side_a = tuple(int(i) for i in np.nonzero(x[:n] > 0)[0])
        return side_a, p.difference(side_a)

    return ReductionArtifact(g, decode)


def _lit_node(lit: int) -> int:
    return 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)


def max2sat_to_maxcut(
    s: TwoSatInstance, mode: str = "ground-gadget", big_weight: float | None = None
) -> ReductionArtifact:
    """Weighted 2-SAT to MaxCut.

    ``ground-gadget`` adds a ground node ``g`` and spreads each clause weight
    ``w`` as ``w/2`` over the triangle (p, g), (q, g), (p, q); a literal is
    true when its node sits opposite ``g``. Any consistent labeling then cuts
    ``big_weight * n_vars + satisfied weight``.

    ``paper-literal`` joins the two literal nodes of each clause by an edge of
    weight ``w``, which rewards exactly-one-true rather than at-least-one-true.
    Its decoder tries both sides as "true" and keeps the better assignment.
    """
    if mode not in MAX2SAT_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MAX2SAT_MODES}")
    if big_weight is None:
        big_weight = s.total_weight + 1.0
    acc: dict[tuple[int, int], float] = defaultdict(float)

    def add(u: int, v: int, w: float) -> None:
        if u != v:
            acc[(min(u, v), max(u, v))] += w

    for i in range(s.n_vars):
        add(2 * i, 2 * i + 1, big_weight)
    ground = 2 * s.n_vars
    if mode == "ground-gadget":
        for p, q, w in s.clauses:
            if p == q:
                add(_lit_node(p), ground, w)
                continue
            add(_lit_node(p), ground, w / 2)
            add(_lit_node(q), ground, w / 2)
            add(_lit_node(p), _lit_node(q), w / 2)
        n_nodes = ground + 1
    else:
        for p, q, w in s.clauses:
            add(_lit_node(p), _lit_node(q), w)
        n_nodes = 2 * s.n_vars
    graph = _graph_from_weights(max(n_nodes, 1), acc)

    def decode(spins):
        x = as_spins(spins)
        if mode == "ground-gadget":
            assignment = tuple(bool(x[2 * i] != x[ground]) for i in range(s.n_vars))
            return assignment, satisfied_weight(s, assignment)
        best = None
        for true_side in (1, -1):
            assignment = tuple(bool(x[2 * i] == true_side) for i in range(s.n_vars))
            val = satisfied_weight(s, assignment)
            if best is None or val > best[1]:
                best = (assignment, val)
        return best

    return ReductionArtifact(graph, decode)


def is_clique(g: WeightedGraph, vertices) -> bool:
    edges = g.edge_set()
    vs = sorted(vertices)
    return all((u, v) in edges for i, u in enumerate(vs) for v in vs[i + 1 :])


def is_independent_set(g: WeightedGraph, vertices) -> bool:
    chosen = set(vertices)
    return not any(u in chosen and v in chosen for u, v, _ in g.edges)


def repair_clique(g: WeightedGraph, candidate) -> tuple[int, ...]:
    """Drop minimum-induced-degree vertices (lowest index on ties) until a clique remains."""
    nbrs = g.neighbor_sets()
    current = set(int(v) for v in candidate)
    while current:
        degrees = {v: len(nbrs[v] & current) for v in current}
        if all(d == len(current) - 1 for d in degrees.values()):
            break
        current.remove(min(current, key=lambda v: (degrees[v], v)))
    return tuple(sorted(current))


def clique_type_b_weight(n: int) -> float:
    return 2.0 * (n + 1) + 1.0


def clique_to_max2sat(g: WeightedGraph) -> ReductionArtifact:
    """Max clique as weighted 2-SAT over ``x_1..x_n`` and an auxiliary ``z = x_{n+1}``.

    Per vertex: ``(x_i or z)`` and ``(x_i or not z)`` with weight 1. Per
    non-edge: ``(not x_i or not x_j)`` with a weight exceeding every possible
    vertex-selection gain.
    """
    n = g.n
    z = n + 1
    clauses: list[tuple[int, int, float]] = []
    for i in range(1, n + 1):
        clauses.append((i, z, 1.0))
        clauses.append((i, -z, 1.0))
    edges = g.edge_set()
    wb = clique_type_b_weight(n)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges:
                clauses.append((-(i + 1), -(j + 1), wb))
    sat = TwoSatInstance(n + 1, tuple(clauses))

    def decode(assignment):
        chosen = [i for i in range(n) if assignment[i]]
        clique = repair_clique(g, chosen)
        return clique, len(clique)

    return ReductionArtifact(sat, decode)


def clique_to_maxcut(g: WeightedGraph, mode: str = "ground-gadget") -> ReductionArtifact:
    """Compose :func:`clique_to_max2sat` with :func:`max2sat_to_maxcut`.

    The target has ``2(n+1)+1`` nodes in gadget mode and ``2(n+1)`` in
    paper-literal mode.
    """
    to_sat = clique_to_max2sat(g)
    to_cut = max2sat_to_maxcut(to_sat.target, mode=mode)
    n_vars = to_sat.target.n_vars

    def decode(spins):
        x = as_spins(spins)
        if mode == "ground-gadget":
            assignment, _ = to_cut.decode(x)
            return to_sat.decode(assignment)
        best = None
        for true_side in (1, -1):
            assignment = tuple(bool(x[2 * i] == true_side) for i in range(n_vars))
            result = to_sat.decode(assignment)
            if best is None or result[1] > best[1]:
                best = result
        return best

    return ReductionArtifact(to_cut.target, decode)


def repair_independent_set(g: WeightedGraph, selected, weights: Sequence[float]) -> tuple[int, ...]:
    """Resolve violated edges in ``(u, v)`` order by dropping the lighter endpoint.

    On equal weights the lower index is dropped.
    """
    chosen = set(int(v) for v in selected)
    for u, v, _ in g.edges:
        if u in chosen and v in chosen:
            chosen.remove(v if weights[v] < weights[u] else u)
    return tuple(sorted(chosen))


def mwis_to_qubo(g: WeightedGraph, penalty: float | None = None) -> ReductionArtifact:
    """Weighted independent set as ``min x^T Q x`` with ``Q_ii = -w_i``, ``Q_ij = P/2`` on edges."""
    if g.node_weights is None:
        raise ValueError("graph has no node weights")
    w = np.array(g.node_weights)
    if np.any(w < 0):
        raise ValueError("node weights must be non-negative")
    wmax = float(w.max(initial=0.0))
    if penalty is None:
        penalty = 2.0 * wmax if wmax > 0 else 1.0
    if penalty <= wmax:
        raise ValueError(f"penalty {penalty} must exceed the largest node weight {wmax}")
    q = np.diag(-w)
    for u, v, _ in g.edges:
        q[u, v] = q[v, u] = penalty / 2.0
    weights = g.node_weights

    def decode(bits):
        b = as_binary(bits)
        chosen = repair_independent_set(g, np.nonzero(b[: g.n])[0], weights)
        return chosen, float(sum(weights[i] for i in chosen))

    return ReductionArtifact(q, decode)
