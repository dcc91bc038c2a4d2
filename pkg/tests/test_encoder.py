import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_graph
from logenc.encoder import (
    TWO_PI,
    LogEncoding,
    PauliObservable,
    build_ansatz,
    cost_maxcut,
    cost_qubo,
    decode_params,
    n_qubits_for,
    pauli_decompose,
    pauli_decompose_trace,
    phase,
    r_threshold,
    reconstruct,
    wrap_angles,
)
from logenc.model import WeightedGraph, build_laplacian, cut_value, pad_to_power_of_two, qubo_value

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
}


def trace_coefficients(m):
    """Reference decomposition: c_s = Tr(P_s M) / 2^N over every string."""
    n = int(np.log2(m.shape[0]))
    out = {}
    for letters in itertools.product("IXYZ", repeat=n):
        p = reduce(np.kron, (PAULI[c] for c in letters), np.eye(1))
        out["".join(letters)] = np.trace(p @ m) / m.shape[0]
    return out


def random_symmetric(rng, dim, lo=-10, hi=10):
    a = rng.integers(lo, hi + 1, (dim, dim)).astype(float)
    return np.triu(a) + np.triu(a, 1).T


class TestThreshold:
    @pytest.mark.parametrize("theta, bit", [(0.0, 0), (np.pi, 1), (1.5 * np.pi, 1)])
    def test_r_threshold(self, theta, bit):
        assert r_threshold(theta) == bit

    @pytest.mark.parametrize("theta, sign", [(0.5, 1), (4.0, -1), (np.pi - 1e-12, 1)])
    def test_phase(self, theta, sign):
        assert phase(theta) == sign

    @pytest.mark.parametrize("n, qubits", [(128, 7), (5, 3), (256, 8), (1, 0), (2, 1), (3, 2)])
    def test_n_qubits_for(self, n, qubits):
        assert n_qubits_for(n) == qubits

    def test_wrap_never_returns_two_pi(self):
        t = wrap_angles([-1e-18, TWO_PI, -TWO_PI, 7.0])
        assert np.all((t >= 0) & (t < TWO_PI))


class TestDecode:
    def test_zero_and_pi(self):
        spins, bits = decode_params([0.0, np.pi])
        np.testing.assert_array_equal(spins, [1, -1])
        np.testing.assert_array_equal(bits, [0, 1])

    def test_just_below_wrap(self):
        spins, bits = decode_params([TWO_PI - 1e-9])
        assert spins.tolist() == [-1] and bits.tolist() == [1]

    def test_empty(self):
        spins, bits = decode_params([])
        assert len(spins) == 0 and len(bits) == 0

    @given(st.lists(st.floats(0, TWO_PI, exclude_max=True), min_size=1, max_size=20),
           st.integers(-3, 3))
    def test_invariant_under_full_turns(self, theta, k):
        theta = np.array(theta)
        shifted = theta + k * TWO_PI
        for a, b in zip(decode_params(theta), decode_params(shifted)):
            # adding k*2pi rounds; points within that error of a branch edge may flip
            near = (np.abs(theta - np.pi) < 1e-9) | (theta < 1e-9) | (theta > TWO_PI - 1e-9)
            np.testing.assert_array_equal(a[~near], b[~near])

    @given(st.lists(st.floats(-20, 20), max_size=20))
    def test_spin_bit_relation(self, theta):
        spins, bits = decode_params(theta)
        np.testing.assert_array_equal(spins, 1 - 2 * bits)


class TestAnsatz:
    def test_uniform(self):
        np.testing.assert_allclose(build_ansatz([0, 0, 0, 0], 2), [0.5] * 4)

    def test_phase_table(self):
        np.testing.assert_allclose(build_ansatz([0, 4.0], 1), [2**-0.5, -(2**-0.5)])

    def test_global_sign(self):
        psi = build_ansatz([4.0] * 4, 2)
        np.testing.assert_allclose(psi, [-0.5] * 4)
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_padding_has_positive_phase(self):
        np.testing.assert_allclose(build_ansatz([4.0], 2), [-0.5, 0.5, 0.5, 0.5])

    def test_too_many_parameters(self):
        with pytest.raises(ValueError):
            build_ansatz([0.0] * 5, 2)

    @given(st.integers(0, 8), st.integers(0, 2**32 - 1))
    def test_norm_and_magnitudes(self, n_qubits, seed):
        rng = np.random.default_rng(seed)
        dim = 1 << n_qubits
        psi = build_ansatz(rng.uniform(0, TWO_PI, int(rng.integers(0, dim + 1))), n_qubits)
        assert abs(np.vdot(psi, psi).real - 1.0) <= 1e-12
        np.testing.assert_allclose(np.abs(psi), dim**-0.5)
        assert np.all(psi.imag == 0)


class TestDecompose:
    def test_edge_laplacian(self):
        assert pauli_decompose(np.array([[1.0, -1.0], [-1.0, 1.0]])).as_dict() == {"I": 1.0, "X": -1.0}

    def test_zero_matrix(self):
        assert len(pauli_decompose(np.zeros((4, 4)))) == 0

    def test_scaled_identity(self):
        assert pauli_decompose(2 * np.eye(2)).as_dict() == {"I": 2.0}

    @pytest.mark.parametrize("shape", [(3, 3), (2, 3)])
    def test_rejects_bad_shapes(self, shape):
        with pytest.raises(ValueError):
            pauli_decompose(np.zeros(shape))

    def test_kronecker_order(self):
        # Z on the most significant qubit, X on the least
        m = np.kron(PAULI["Z"], PAULI["X"]).real
        assert pauli_decompose(m).as_dict() == {"ZX": 1.0}

    @pytest.mark.parametrize("dim", [2, 4, 8, 16])
    def test_matches_reference_trace_formula(self, dim):
        rng = np.random.default_rng(dim)
        for _ in range(10):
            m = random_symmetric(rng, dim)
            ref = {s: c for s, c in trace_coefficients(m).items() if abs(c) > 1e-12}
            assert all(abs(c.imag) < 1e-14 for c in ref.values())
            got = pauli_decompose(m).as_dict()
            assert set(got) == set(ref)
            for s, c in ref.items():
                assert got[s] == c.real

    def test_fast_equals_in_package_trace_oracle(self):
        rng = np.random.default_rng(30)
        for dim in (2, 4, 8, 16):
            m = random_symmetric(rng, dim)
            assert pauli_decompose(m).as_dict() == pauli_decompose_trace(m).as_dict()

    @given(st.integers(0, 4), st.integers(0, 2**32 - 1))
    def test_no_odd_y_strings(self, n_qubits, seed):
        m = random_symmetric(np.random.default_rng(seed), 1 << n_qubits)
        for string in pauli_decompose(m).as_dict():
            assert string.count("Y") % 2 == 0

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            pauli_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestReconstruct:
    def test_inverse_of_edge_example(self):
        obs = PauliObservable(1, ((1.0, "I"), (-1.0, "X")))
        np.testing.assert_array_equal(reconstruct(obs), [[1, -1], [-1, 1]])

    def test_empty(self):
        np.testing.assert_array_equal(reconstruct(PauliObservable(2, ())), np.zeros((4, 4)))

    def test_zz(self):
        np.testing.assert_array_equal(reconstruct(PauliObservable(2, ((1.0, "ZZ"),))), np.diag([1, -1, -1, 1]))

    @pytest.mark.parametrize("dim", [4, 8, 16, 64])
    def test_round_trip(self, dim):
        rng = np.random.default_rng(dim + 1)
        for _ in range(5):
            m = random_symmetric(rng, dim)
            assert np.max(np.abs(reconstruct(pauli_decompose(m, tol=0)) - m)) <= 1e-12

    def test_dump_parse_round_trip(self):
        m = random_symmetric(np.random.default_rng(31), 8)
        obs = pauli_decompose(m)
        text = obs.dump()
        assert PauliObservable.parse(text).as_dict() == obs.as_dict()
        mags = [abs(float(line.split()[0])) for line in text.splitlines()]
        assert mags == sorted(mags, reverse=True)


class TestCostMaxCut:
    EDGE = build_laplacian(WeightedGraph.unweighted(2, [(0, 1)]))

    def test_cut_edge(self):
        assert cost_maxcut([0.5, 4.0], self.EDGE) == -1

    def test_uncut_edge(self):
        assert cost_maxcut([0.5, 0.5], self.EDGE) == 0

    def test_triangle_padded(self):
        L = build_laplacian(WeightedGraph.unweighted(3, [(0, 1), (1, 2), (0, 2)]))
        for method in ("fast", "statevector"):
            assert cost_maxcut([0, 0, 4.0], L, method=method) == pytest.approx(-2)
            assert cost_maxcut([0, 0, 4.0], pad_to_power_of_two(L), method=method) == pytest.approx(-2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cost_maxcut([0.0] * 5, np.zeros((4, 4)))

    def test_identity_with_independent_statevector(self):
        rng = np.random.default_rng(32)
        for _ in range(50):
            n = int(rng.integers(3, 17))
            g = random_graph(rng, n)
            theta = rng.uniform(0, TWO_PI, n)
            dim = 1 << int(np.ceil(np.log2(n)))
            psi = np.ones(dim)
            psi[:n] = np.where(theta < np.pi, 1.0, -1.0)
            psi /= np.sqrt(dim)
            expected = -(dim / 4) * psi @ pad_to_power_of_two(build_laplacian(g)) @ psi
            assert cost_maxcut(theta, build_laplacian(g)) == pytest.approx(expected, abs=1e-9)

    def test_batch_matches_single(self):
        rng = np.random.default_rng(33)
        g = random_graph(rng, 11)
        enc = LogEncoding.maxcut(build_laplacian(g))
        thetas = rng.uniform(0, TWO_PI, (20, 11))
        np.testing.assert_allclose(enc.batch(thetas), [enc(t) for t in thetas], atol=1e-12)


class TestCostQubo:
    Q = np.array([[-1.0, 1.5], [1.5, -1.0]])

    def test_single_selection(self):
        assert cost_qubo([4.0, 0.5], self.Q) == pytest.approx(-1)

    def test_nothing_selected(self):
        rng = np.random.default_rng(34)
        q = rng.normal(size=(6, 6))
        assert cost_qubo(rng.uniform(0, np.pi, 6), q) == pytest.approx(0, abs=1e-12)

    def test_diagonal(self):
        assert cost_qubo([4.0, 4.0], np.diag([-2.0, -3.0])) == pytest.approx(-5)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 8, 9])
    def test_every_corner(self, n):
        rng = np.random.default_rng(100 + n)
        q = rng.integers(-5, 6, (n, n)).astype(float)
        enc = LogEncoding.qubo(q)
        for b in itertools.product((0, 1), repeat=min(n, 7)):
            b = np.array(b + (0,) * (n - len(b)))
            theta = np.where(b == 1, 4.0, 0.5)
            assert enc(theta) == pytest.approx(float(b @ q @ b), abs=1e-9)
            assert enc.statevector_cost(theta) == pytest.approx(float(b @ q @ b), abs=1e-9)

    def test_identity_on_random_instances(self):
        rng = np.random.default_rng(35)
        for _ in range(100):
            n = int(rng.integers(1, 17))
            q = rng.normal(size=(n, n))
            theta = rng.uniform(0, TWO_PI, n)
            _, bits = decode_params(theta)
            assert cost_qubo(theta, q) == pytest.approx(qubo_value(q, bits), abs=1e-9)
