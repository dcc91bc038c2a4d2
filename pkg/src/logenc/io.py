"""Plain-text instance formats.

graph        ``n m`` then ``m`` lines ``u v w`` (0-based vertices)
node graph   graph format followed by ``n`` lines ``i w_i``
partition    one positive integer per line
qubo         ``n`` then ``n`` rows of ``n`` numbers
2-SAT        ``n m`` then ``m`` lines ``w lit_p lit_q`` (signed 1-based literals)
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .model import WeightedGraph
from .reductions import PartitionInstance, TwoSatInstance


def _lines(path) -> list[list[str]]:
    text = Path(path).read_text()
    return [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def format_graph(g: WeightedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out += [f"{u} {v} {_fmt(w)}" for u, v, w in g.edges]
    if g.node_weights is not None:
        out += [f"{i} {_fmt(w)}" for i, w in enumerate(g.node_weights)]
    return "\n".join(out) + "\n"


def parse_graph(rows: list[list[str]]) -> WeightedGraph:
    if not rows or len(rows[0]) != 2:
        raise ValueError("graph file must start with 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) < m:
        raise ValueError(f"graph header promises {m} edges, found {len(body)} lines")
    edges = []
    for row in body[:m]:
        if len(row) != 3:
            raise ValueError(f"bad edge line {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1]), float(row[2])))
    rest = body[m:]
    node_weights = None
    if rest:
        if len(rest) != n:
            raise ValueError(f"expected {n} node-weight lines, found {len(rest)}")
        node_weights = [0.0] * n
        for row in rest:
            node_weights[int(row[0])] = float(row[1])
    return WeightedGraph(n, tuple(edges), None if node_weights is None else tuple(node_weights))


def read_graph(path) -> WeightedGraph:
    return parse_graph(_lines(path))


def write_graph(g: WeightedGraph, path) -> None:
    Path(path).write_text(format_graph(g))


def read_partition(path) -> PartitionInstance:
    return PartitionInstance(tuple(int(row[0]) for row in _lines(path)))


def format_partition(p: PartitionInstance) -> str:
    return "".join(f"{w}\n" for w in p.weights)


def write_partition(p: PartitionInstance, path) -> None:
    Path(path).write_text(format_partition(p))


def read_qubo(path) -> np.ndarray:
    rows = _lines(path)
    if not rows:
        raise ValueError("empty matrix file")
    n = int(rows[0][0])
    data = np.array([[float(x) for x in row] for row in rows[1 : n + 1]])
    if data.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {data.shape}")
    return data


def write_qubo(q: np.ndarray, path) -> None:
    q = np.asarray(q)
    lines = [str(q.shape[0])] + [" ".join(_fmt(x) for x in row) for row in q]
    Path(path).write_text("\n".join(lines) + "\n")


def read_twosat(path) -> TwoSatInstance:
    rows = _lines(path)
    if not rows or len(rows[0]) != 2:
        raise ValueError("2-SAT file must start with 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"2-SAT header promises {m} clauses, found {len(rows) - 1}")
    return TwoSatInstance(n, tuple((int(p), int(q), float(w)) for w, p, q in rows[1:]))


def format_twosat(s: TwoSatInstance) -> str:
    lines = [f"{s.n_vars} {len(s.clauses)}"] + [f"{_fmt(w)} {p} {q}" for p, q, w in s.clauses]
    return "\n".join(lines) + "\n"


def write_twosat(s: TwoSatInstance, path) -> None:
    Path(path).write_text(format_twosat(s))
