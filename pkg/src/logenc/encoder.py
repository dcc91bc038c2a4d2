"""Logarithmic encoding: n binary variables as sign phases on ceil(log2 n) qubits.

Each continuous parameter ``theta_k`` in ``[0, 2pi)`` is thresholded at ``pi``
into a phase ``+1`` / ``-1``. The ansatz puts that phase on basis state ``k``
of a uniform superposition, so for a padded ``D x D`` observable ``M``::

    <psi|M|psi> = s^T M s / D

with ``s`` the phase vector. A MaxCut cost ``-(D/4) <psi|L|psi>`` is therefore
exactly minus the cut of the decoded spins.

Pauli strings are written most-significant qubit first: letter ``q`` of a
string acts on bit ``N-1-q`` of the basis index (Kronecker order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .model import is_power_of_two, pad_to_power_of_two, symmetrize

__all__ = [
    "TWO_PI",
    "wrap_angles",
    "r_threshold",
    "phase",
    "n_qubits_for",
    "decode_params",
    "build_ansatz",
    "PauliObservable",
    "pauli_decompose",
    "pauli_decompose_trace",
    "reconstruct",
    "pauli_matrix",
    "LogEncoding",
    "cost_maxcut",
    "cost_qubo",
]

TWO_PI = 2.0 * np.pi
PAULI_LETTERS = "IXYZ"
_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def wrap_angles(theta) -> np.ndarray:
    """Reduce angles modulo 2*pi into ``[0, 2*pi)``."""
    t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # np.mod can round tiny negatives up to exactly 2*pi
    return np.where(t >= TWO_PI, 0.0, t)


def r_threshold(theta_k: float) -> int:
    return 0 if theta_k < np.pi else 1


def phase(theta_k: float) -> int:
    return 1 - 2 * r_threshold(theta_k)


def n_qubits_for(n: int) -> int:
    """Qubits needed to index ``n`` basis states: ``ceil(log2 n)``, 0 for ``n == 1``."""
    if n < 1:
        raise ValueError(f"problem size must be at least 1, got {n}")
    return (n - 1).bit_length()


def decode_params(theta) -> tuple[np.ndarray, np.ndarray]:
    """Map parameters to ``(spins, bits)`` with ``spins == 1 - 2 * bits``."""
    bits = (wrap_angles(theta) >= np.pi).astype(np.int64)
    return 1 - 2 * bits, bits


def _padded_spins(theta, dim: int) -> np.ndarray:
    spins, _ = decode_params(theta)
    if len(spins) > dim:
        raise ValueError(f"{len(spins)} parameters do not fit in dimension {dim}")
    out = np.ones(dim)
    out[: len(spins)] = spins
    return out


def build_ansatz(theta, n_qubits: int) -> np.ndarray:
    """Statevector ``U(theta) H^N |0>``: amplitudes ``phase(theta_k) / sqrt(2^N)``.

    Parameters beyond ``len(theta)`` are taken as 0 (phase +1).
    """
    dim = 1 << n_qubits
    return _padded_spins(theta, dim).astype(complex) / np.sqrt(dim)


def pauli_matrix(string: str) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for letter in string:
        out = np.kron(out, _PAULI[letter])
    return out


def _check_power_of_two(m: np.ndarray) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not is_power_of_two(m.shape[0]):
        raise ValueError(f"matrix dimension {m.shape[0]} is not a power of two")
    return m.shape[0].bit_length() - 1


def _string_index(string: str) -> int:
    idx = 0
    for letter in string:
        idx = 4 * idx + PAULI_LETTERS.index(letter)
    return idx


def _index_string(idx: int, n_qubits: int) -> str:
    letters = []
    for _ in range(n_qubits):
        idx, r = divmod(idx, 4)
        letters.append(PAULI_LETTERS[r])
    return "".join(reversed(letters))


@dataclass(frozen=True)
class PauliObservable:
    """Real linear combination of Pauli strings on ``n_qubits`` qubits."""

    n_qubits: int
    terms: tuple[tuple[float, str], ...]

    def __post_init__(self) -> None:
        seen = set()
        clean = []
        for coeff, string in self.terms:
            if len(string) != self.n_qubits or any(c not in PAULI_LETTERS for c in string):
                raise ValueError(f"invalid Pauli string {string!r} for {self.n_qubits} qubits")
            if string in seen:
                raise ValueError(f"duplicate Pauli string {string!r}")
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise ValueError(f"non-finite coefficient for {string!r}")
            seen.add(string)
            clean.append((coeff, string))
        object.__setattr__(self, "terms", tuple(clean))

    def __len__(self) -> int:
        return len(self.terms)

    def as_dict(self) -> dict[str, float]:
        return {s: c for c, s in self.terms}

    def to_matrix(self) -> np.ndarray:
        return reconstruct(self)

    def dump(self) -> str:
        """Text form: ``COEFF STRING`` per line, largest ``|COEFF|`` first."""
        ordered = sorted(self.terms, key=lambda t: (-abs(t[0]), t[1]))
        return "".join(f"{c!r} {s}\n" for c, s in ordered)

    @classmethod
    def parse(cls, text: str) -> "PauliObservable":
        terms = []
        for line in text.splitlines():
            if line.strip():
                coeff, string = line.split()
                terms.append((float(coeff), string))
        if not terms:
            raise ValueError("empty observable dump; qubit count is undetermined")
        return cls(len(terms[0][1]), tuple(terms))


def _coefficient_tensor(m: np.ndarray) -> np.ndarray:
    """Fast Pauli transform: all ``Tr(P M) / D`` as a ``(4,)*N`` complex tensor."""
    n = _check_power_of_two(m)
    t = np.asarray(m, dtype=complex).reshape((2,) * (2 * n))
    # axes: [done pauli axes..., remaining row axes..., remaining col axes...]
    for k in range(n):
        rest = n - k
        # bring the current row/col pair to the end
        t = np.moveaxis(t, [k, k + rest], [-2, -1])
        a, b, c, d = t[..., 0, 0], t[..., 0, 1], t[..., 1, 0], t[..., 1, 1]
        comp = np.stack([(a + d) / 2, (b + c) / 2, 1j * (b - c) / 2, (a - d) / 2], axis=-1)
        # move the new Pauli axis to position k
        t = np.moveaxis(comp, -1, k)
    return t


def pauli_decompose(m: np.ndarray, tol: float = 1e-12) -> PauliObservable:
    """Decompose a real symmetric ``2^N x 2^N`` matrix over Pauli strings.

    Coefficients with ``|c| <= tol`` are dropped. Runs in ``O(N 4^N)``.
    """
    m = np.asarray(m)
    n = _check_power_of_two(m)
    coeffs = _coefficient_tensor(m).reshape(-1)
    if np.abs(coeffs.imag).max(initial=0.0) > 1e-9 * (1.0 + np.abs(m).max(initial=0.0)):
        raise ValueError("matrix is not Hermitian; Pauli coefficients are not real")
    real = coeffs.real
    keep = np.nonzero(np.abs(real) > tol)[0]
    return PauliObservable(n, tuple((float(real[i]), _index_string(int(i), n)) for i in keep))


def pauli_decompose_trace(m: np.ndarray, tol: float = 1e-12) -> PauliObservable:
    """Reference decomposition by the explicit trace formula over all ``4^N`` strings."""
    m = np.asarray(m)
    n = _check_power_of_two(m)
    dim = m.shape[0]
    terms = []
    for letters in itertools.product(PAULI_LETTERS, repeat=n):
        string = "".join(letters)
        c = np.trace(pauli_matrix(string) @ m) / dim
        if abs(c.real) > tol:
            terms.append((float(c.real), string))
    return PauliObservable(n, tuple(terms))


def reconstruct(obs: PauliObservable) -> np.ndarray:
    """Dense ``sum_i c_i J_i`` via the inverse fast transform."""
    n = obs.n_qubits
    t = np.zeros((4,) * n, dtype=complex)
    for coeff, string in obs.terms:
        t[tuple(PAULI_LETTERS.index(c) for c in string)] = coeff
    # each pass consumes the leading Pauli axis and appends its (row, col) pair
    for _ in range(n):
        ci, cx, cy, cz = t[0], t[1], t[2], t[3]
        top = np.stack([ci + cz, cx - 1j * cy], axis=-1)
        bottom = np.stack([cx + 1j * cy, ci - cz], axis=-1)
        t = np.stack([top, bottom], axis=-2)
    order = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    mat = np.transpose(t, order).reshape(1 << n, 1 << n)
    if np.abs(mat.imag).max(initial=0.0) > 1e-12 * (1.0 + np.abs(mat).max(initial=0.0)):
        return mat
    return mat.real


@dataclass(frozen=True)
class LogEncoding:
    """A padded observable plus the scale turning its expectation into the cost.

    ``cost(theta) = scale * <psi(theta)| matrix |psi(theta)>``. Use
    :meth:`maxcut` or :meth:`qubo` to build one.
    """

    matrix: np.ndarray
    scale: float
    n_params: int
    kind: str = "maxcut"

    @classmethod
    def maxcut(cls, laplacian: np.ndarray, n_params: int | None = None) -> "LogEncoding":
        lap = np.asarray(laplacian, dtype=float)
        n = lap.shape[0] if n_params is None else n_params
        padded = pad_to_power_of_two(lap)
        dim = padded.shape[0]
        if (1 << n_qubits_for(n)) != dim:
            raise ValueError(f"{n} parameters do not match observable dimension {dim}")
        return cls(padded, -dim / 4.0, n, "maxcut")

    @classmethod
    def qubo(cls, q: np.ndarray) -> "LogEncoding":
        """Encode ``min_b b^T Q b`` with ``b_k = R(theta_k)``.

        Substituting ``b = (1 - s) / 2`` leaves linear terms in ``s``. They
        are coupled to a reference coordinate (index ``n``) whose parameter
        is absent and hence always has phase +1; a power-of-two ``n`` costs
        one extra qubit for it.
        """
        q = symmetrize(q)
        n = q.shape[0]
        dim = 1 << n_qubits_for(n + 1)
        ones = np.ones(n)
        row = q @ ones
        m = np.zeros((dim, dim))
        m[:n, :n] = q / 4.0
        m[:n, n] = m[n, :n] = -row / 4.0
        m[n, n] = float(ones @ row) / 4.0
        return cls(m, float(dim), n, "qubo")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def spins(self, theta) -> np.ndarray:
        if len(theta) != self.n_params:
            raise ValueError(f"expected {self.n_params} parameters, got {len(theta)}")
        return _padded_spins(theta, self.dim)

    def __call__(self, theta) -> float:
        s = self.spins(theta)
        return self.scale * float(s @ self.matrix @ s) / self.dim

    def batch(self, thetas) -> np.ndarray:
        """Vectorized cost over a ``(P, n_params)`` array of parameter rows."""
        thetas = np.atleast_2d(thetas)
        s = np.ones((thetas.shape[0], self.dim))
        s[:, : self.n_params] = 1.0 - 2.0 * (wrap_angles(thetas) >= np.pi)
        return self.scale * np.einsum("pi,ij,pj->p", s, self.matrix, s) / self.dim

    def statevector_cost(self, theta) -> float:
        from .simulator import expectation_exact

        if len(theta) != self.n_params:
            raise ValueError(f"expected {self.n_params} parameters, got {len(theta)}")
        return self.scale * expectation_exact(build_ansatz(theta, self.n_qubits), self.matrix)

    @cached_property
    def observable(self) -> PauliObservable:
        return pauli_decompose(self.matrix)


def cost_maxcut(theta, laplacian: np.ndarray, method: str = "fast") -> float:
    """``-2^(N-2) <psi(theta)|L|psi(theta)>``; equals minus the decoded cut.

    ``method="statevector"`` goes through the explicit ansatz state.
    """
    enc = LogEncoding.maxcut(laplacian, n_params=len(theta))
    return enc.statevector_cost(theta) if method == "statevector" else enc(theta)


def cost_qubo(theta, q: np.ndarray, method: str = "fast") -> float:
    """QUBO cost through the log encoding; equals ``b^T Q b`` with ``b = R(theta)``."""
    q = np.asarray(q, dtype=float)
    if len(theta) != q.shape[0]:
        raise ValueError(f"expected {q.shape[0]} parameters, got {len(theta)}")
    enc = LogEncoding.qubo(q)
    return enc.statevector_cost(theta) if method == "statevector" else enc(theta)
