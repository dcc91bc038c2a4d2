import itertools
import subprocess
import sys

import numpy as np
import pytest

from conftest import random_graph
from logenc import kernels

BACKENDS = kernels.available_backends()


def naive_maxcut(adj):
    n = len(adj)
    best = -np.inf
    for bits in itertools.product((1, -1), repeat=n - 1):
        x = np.array((1,) + bits)
        best = max(best, float(np.sum(adj * (1 - np.outer(x, x))) / 4))
    return best


def naive_qubo(q):
    n = len(q)
    return min(float(np.array(b) @ q @ np.array(b)) for b in itertools.product((0, 1), repeat=n))


def naive_partition(w):
    w = np.array(w)
    return min(abs(int(np.array(s) @ w)) for s in itertools.product((1, -1), repeat=len(w)))


def test_compiled_backend_is_selected_when_built():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.parametrize("backend", BACKENDS)
class TestEnumeration:
    def test_maxcut_matches_naive(self, backend):
        rng = np.random.default_rng(10)
        for n in range(2, 11):
            adj = random_graph(rng, n).adjacency()
            best, mask = kernels.maxcut_enumerate(adj, backend=backend)
            x = np.array([-1 if (mask >> i) & 1 else 1 for i in range(n)])
            assert best == pytest.approx(naive_maxcut(adj))
            assert np.sum(adj * (1 - np.outer(x, x))) / 4 == pytest.approx(best)
            assert mask & 1 == 0

    def test_qubo_matches_naive(self, backend):
        rng = np.random.default_rng(11)
        for n in range(1, 10):
            q = rng.integers(-9, 10, (n, n)).astype(float)
            q = (q + q.T) / 2
            best, mask = kernels.qubo_enumerate(q, backend=backend)
            x = np.array([(mask >> i) & 1 for i in range(n)])
            assert best == pytest.approx(naive_qubo(q))
            assert x @ q @ x == pytest.approx(best)

    def test_partition_matches_naive(self, backend):
        rng = np.random.default_rng(12)
        for n in range(2, 12):
            w = rng.integers(1, 101, n)
            best, mask = kernels.partition_enumerate(w, backend=backend)
            signs = np.array([-1 if (mask >> i) & 1 else 1 for i in range(n)])
            assert best == naive_partition(w)
            assert abs(int(signs @ w)) == best

    def test_local_search_is_one_flip_optimal(self, backend):
        rng = np.random.default_rng(13)
        for _ in range(20):
            adj = random_graph(rng, 15).adjacency()
            x = kernels.local_search_maxcut(adj, rng.choice([-1, 1], 15), backend=backend)
            gains = x * (adj @ x)
            assert np.all(gains <= 1e-9)


def test_backends_agree_on_witnesses():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(14)
    for _ in range(10):
        n = int(rng.integers(4, 16))
        adj = random_graph(rng, n).adjacency()
        w = rng.integers(1, 101, n)
        x0 = rng.choice([-1, 1], n)
        mc = [kernels.maxcut_enumerate(adj, backend=b) for b in BACKENDS]
        qb = [kernels.qubo_enumerate(adj - np.diag(w), backend=b)[1] for b in BACKENDS]
        pt = [kernels.partition_enumerate(w, backend=b) for b in BACKENDS]
        ls = [kernels.local_search_maxcut(adj, x0, backend=b) for b in BACKENDS]
        assert mc[0][1] == mc[1][1] and mc[0][0] == pytest.approx(mc[1][0])
        assert qb[0] == qb[1]
        assert pt[0] == pt[1]
        np.testing.assert_array_equal(ls[0], ls[1])


def test_falls_back_to_numpy_without_extension():
    code = (
        "import sys; sys.modules['logenc._ckernels'] = None\n"
        "from logenc import kernels, oracles, model\n"
        "assert kernels.BACKEND == 'python', kernels.BACKEND\n"
        "print(oracles.brute_force_maxcut(model.WeightedGraph.complete(5)).optimal_value)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "6.0"
