"""Expectation values: exact statevector algebra and simulated shot sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoder import PauliObservable, _string_index, build_ansatz

__all__ = [
    "ShotConfig",
    "ExpectationEstimate",
    "expectation_exact",
    "expectation_term_exact",
    "apply_pauli",
    "expectation_sampled",
]

_MASK64 = (1 << 64) - 1
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_SDG = np.array([[1, 0], [0, -1j]], dtype=complex)
_SINGLE = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
# maps the measured basis onto Z: X via H, Y via H S^dagger
_ROTATION = {"X": _H, "Y": _H @ _SDG}


@dataclass(frozen=True)
class ShotConfig:
    shots_per_term: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.shots_per_term < 1:
            raise ValueError("shots_per_term must be at least 1")
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)


@dataclass(frozen=True)
class ExpectationEstimate:
    value: float
    std_error: float
    total_shots: int


def _n_qubits(state: np.ndarray) -> int:
    dim = len(state)
    if dim < 1 or dim & (dim - 1):
        raise ValueError(f"state length {dim} is not a power of two")
    return dim.bit_length() - 1


def expectation_exact(state: np.ndarray, m: np.ndarray) -> float:
    """``<psi|m|psi>``; the imaginary residue must vanish for Hermitian ``m``."""
    state = np.asarray(state)
    m = np.asarray(m)
    if m.shape != (len(state), len(state)):
        raise ValueError(f"matrix shape {m.shape} does not match state length {len(state)}")
    val = np.vdot(state, m @ state)
    if abs(val.imag) > 1e-12 * (1.0 + abs(val.real)):
        raise ValueError(f"expectation has imaginary part {val.imag:.3e}; observable not Hermitian")
    return float(val.real)


def _apply_single(state: np.ndarray, gate: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    t = state.reshape((2,) * n_qubits)
    t = np.tensordot(gate, t, axes=([1], [qubit]))
    return np.moveaxis(t, 0, qubit).reshape(-1)


def apply_pauli(state: np.ndarray, string: str) -> np.ndarray:
    n = _n_qubits(state)
    if len(string) != n:
        raise ValueError(f"Pauli string {string!r} does not act on {n} qubits")
    out = np.asarray(state, dtype=complex)
    for q, letter in enumerate(string):
        if letter != "I":
            out = _apply_single(out, _SINGLE[letter], q, n)
    return out


def expectation_term_exact(state: np.ndarray, string: str) -> float:
    return float(np.vdot(state, apply_pauli(state, string)).real)


def _parity_table(string: str) -> np.ndarray:
    """+1/-1 eigenvalue of the Z-rotated string on each computational basis index."""
    n = len(string)
    idx = np.arange(1 << n)
    parity = np.zeros(1 << n, dtype=np.int64)
    for q, letter in enumerate(string):
        if letter != "I":
            parity ^= (idx >> (n - 1 - q)) & 1
    return 1 - 2 * parity


def _term_rng(seed: int, string: str) -> np.random.Generator:
    # stream keyed by the string itself, so term order never matters
    return np.random.Generator(np.random.Philox(key=(seed ^ _string_index(string)) & _MASK64))


def expectation_sampled(theta, obs: PauliObservable, cfg: ShotConfig) -> ExpectationEstimate:
    """Estimate ``<psi(theta)|H|psi(theta)>`` from per-term measurement shots.

    Every non-identity term is measured in its own rotated basis with
    ``cfg.shots_per_term`` shots; identity terms contribute exactly.
    """
    n = obs.n_qubits
    state = build_ansatz(theta, n)
    value = 0.0
    variance = 0.0
    shots_used = 0
    for coeff, string in obs.terms:
        if set(string) <= {"I"}:
            value += coeff
            continue
        rotated = state
        for q, letter in enumerate(string):
            if letter in _ROTATION:
                rotated = _apply_single(rotated, _ROTATION[letter], q, n)
        probs = np.abs(rotated) ** 2
        probs /= probs.sum()
        counts = _term_rng(cfg.seed, string).multinomial(cfg.shots_per_term, probs)
        k = cfg.shots_per_term
        mean = float(counts @ _parity_table(string)) / k
        value += coeff * mean
        if k > 1:
            variance += coeff**2 * max(0.0, 1.0 - mean**2) / (k - 1)
        shots_used += k
    return ExpectationEstimate(value, float(np.sqrt(variance)), shots_used)

