"""Vectorized numpy versions of the enumeration and local-search kernels.

Semantics match ``_ckernels`` exactly: assignments are visited in reflected
Gray-code order and ties keep the first assignment in that order, so both
backends return identical witnesses.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 15


def _gray_bits(start: int, stop: int, nbits: int) -> tuple[np.ndarray, np.ndarray]:
    i = np.arange(start, stop, dtype=np.int64)
    g = i ^ (i >> 1)
    bits = (g[:, None] >> np.arange(nbits, dtype=np.int64)) & 1
    return g, bits


def maxcut_enumerate(w: np.ndarray) -> tuple[float, int]:
    """Maximum cut over all labelings with vertex 0 pinned to +1.

    Returns ``(best_cut, mask)`` where bit ``v`` of ``mask`` set means
    vertex ``v`` has spin -1.
    """
    n = w.shape[0]
    if n <= 1:
        return 0.0, 0
    lap = np.diag(w.sum(axis=1)) - w
    total = 1 << (n - 1)
    best, best_mask = 0.0, 0
    for start in range(0, total, _CHUNK):
        g, bits = _gray_bits(start, min(start + _CHUNK, total), n - 1)
        x = np.ones((len(g), n))
        x[:, 1:] -= 2.0 * bits
        cuts = np.einsum("ij,jk,ik->i", x, lap, x) / 4.0
        k = int(np.argmax(cuts))
        if cuts[k] > best:
            best, best_mask = float(cuts[k]), int(g[k]) << 1
    return best, best_mask


def qubo_enumerate(q: np.ndarray) -> tuple[float, int]:
    """Minimum of ``x^T Q x`` over all binary ``x`` (bit ``v`` of mask is ``x_v``)."""
    n = q.shape[0]
    total = 1 << n
    best, best_mask = 0.0, 0
    for start in range(0, total, _CHUNK):
        g, bits = _gray_bits(start, min(start + _CHUNK, total), n)
        b = bits.astype(float)
        vals = np.einsum("ij,jk,ik->i", b, q, b)
        k = int(np.argmin(vals))
        if vals[k] < best:
            best, best_mask = float(vals[k]), int(g[k])
    return best, best_mask


def partition_enumerate(weights: np.ndarray) -> tuple[int, int]:
    """Minimum ``|sum_A w - sum_B w|`` with element 0 pinned to side A.

    Bit ``v`` of the returned mask set means element ``v`` is on side B.
    Stops early once the parity lower bound is reached.
    """
    w = np.asarray(weights, dtype=np.int64)
    n = len(w)
    total_sum = int(w.sum())
    floor = total_sum & 1
    best, best_mask = abs(total_sum), 0
    if n <= 1 or best == floor:
        return best, best_mask
    total = 1 << (n - 1)
    for start in range(0, total, _CHUNK):
        g, bits = _gray_bits(start, min(start + _CHUNK, total), n - 1)
        diffs = np.abs(total_sum - 2 * (bits @ w[1:]))
        k = int(np.argmin(diffs))
        if diffs[k] < best:
            best, best_mask = int(diffs[k]), int(g[k]) << 1
            if best == floor:
                break
    return best, best_mask


def local_search_maxcut(w: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """Steepest-ascent single-flip search; returns a 1-flip local optimum.

    Ties between equal gains go to the lowest vertex index.
    """
    x = np.array(x0, dtype=float)
    h = w @ x
    eps = 1e-9 * (1.0 + float(np.abs(w).max(initial=0.0)))
    while True:
        gains = x * h
        v = int(np.argmax(gains)) if len(x) else 0
        if not len(x) or gains[v] <= eps:
            break
        h -= 2.0 * x[v] * w[:, v]
        x[v] = -x[v]
    return x.astype(np.int64)
