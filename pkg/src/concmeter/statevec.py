"""Dense complex state-vector register for up to 8 qubits.

Conventions (pinned by the test suite):
- qubit 1 is the leftmost letter of a ket string and the most significant
  bit of the amplitude index;
- |g> maps to bit 0, |e> maps to bit 1.

All operations are pure: registers are treated as immutable values and
every gate application returns a new register.
"""
from __future__ import annotations

import numpy as np

NORM_TOL_INPUT = 1e-9
NORM_TOL_UNITARY = 1e-12
UNITARITY_TOL = 1e-12
MAX_QUBITS = 8


class InvariantViolation(Exception):
    """An internal consistency check failed (not a user-input problem)."""


def _check_unitary(matrix: np.ndarray, dim: int) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("gate matrix contains NaN/Inf")
    err = np.max(np.abs(m.conj().T @ m - np.eye(dim)))
    if err > UNITARITY_TOL:
        raise ValueError(f"matrix is not unitary (deviation {err:.3e})")
    m.flags.writeable = False
    return m


class Gate1Q:
    """A single-qubit gate; unitarity is validated once at construction."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = _check_unitary(matrix, 2)


class Gate2Q:
    """A two-qubit gate on an ordered qubit pair, validated at construction."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = _check_unitary(matrix, 4)


class Register:
    """Normalized n-qubit state vector, qubit 1 = most significant bit."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes, *, normalize: bool = False, _tol: float = NORM_TOL_INPUT):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(np.log2(amps.size)) if amps.size > 0 else 0
        if amps.size == 0 or 2**n != amps.size:
            raise ValueError(f"amplitude count {amps.size} is not a power of two")
        if n > MAX_QUBITS:
            raise ValueError(f"{n} qubits exceeds the supported maximum of {MAX_QUBITS}")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes contain NaN/Inf")
        norm = np.linalg.norm(amps)
        if normalize:
            if norm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        elif abs(norm - 1.0) > _tol:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond tolerance {_tol}")
        amps.flags.writeable = False
        self.n_qubits = n
        self.amplitudes = amps

    @classmethod
    def _wrap(cls, amps: np.ndarray) -> "Register":
        # internal: amplitudes produced by a unitary, tighter tolerance
        return cls(amps, _tol=NORM_TOL_UNITARY)


def ground_register(n: int) -> Register:
    """All-qubits-ground register |g>^n."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [1, {MAX_QUBITS}], got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    return Register._wrap(amps)


def from_amplitudes(amps, *, normalize: bool = False) -> Register:
    """Register from an explicit amplitude list (length a power of two)."""
    return Register(amps, normalize=normalize)


def tensor(a: Register, b: Register) -> Register:
    """Kronecker product; qubits of `a` precede qubits of `b`."""
    if a.n_qubits + b.n_qubits > MAX_QUBITS:
        raise ValueError(
            f"combined register of {a.n_qubits + b.n_qubits} qubits exceeds {MAX_QUBITS}"
        )
    return Register._wrap(np.kron(a.amplitudes, b.amplitudes))


def _check_qubit_index(q: int, n: int) -> None:
    if not 1 <= q <= n:
        raise ValueError(f"qubit index {q} out of range 1..{n}")


def apply_1q(r: Register, q: int, g: Gate1Q) -> Register:
    """Apply a single-qubit gate to qubit q (1-based, 1 = leftmost)."""
    _check_qubit_index(q, r.n_qubits)
    ax = q - 1
    psi = r.amplitudes.reshape([2] * r.n_qubits)
    psi = np.tensordot(g.matrix, psi, axes=([1], [ax]))
    psi = np.moveaxis(psi, 0, ax)
    return Register._wrap(np.ascontiguousarray(psi).reshape(-1))


def apply_2q(r: Register, q1: int, q2: int, g: Gate2Q) -> Register:
    """Apply a two-qubit gate to the ordered pair (q1, q2)."""
    _check_qubit_index(q1, r.n_qubits)
    _check_qubit_index(q2, r.n_qubits)
    if q1 == q2:
        raise ValueError("q1 and q2 must be distinct")
    ax1, ax2 = q1 - 1, q2 - 1
    psi = r.amplitudes.reshape([2] * r.n_qubits)
    gate = g.matrix.reshape(2, 2, 2, 2)  # (out1, out2, in1, in2)
    psi = np.tensordot(gate, psi, axes=([2, 3], [ax1, ax2]))
    psi = np.moveaxis(psi, [0, 1], [ax1, ax2])
    return Register._wrap(np.ascontiguousarray(psi).reshape(-1))


def basis_index(basis: str) -> int:
    """Index of a g/e basis string, first letter = most significant bit."""
    idx = 0
    for ch in basis:
        if ch == "g":
            idx = idx << 1
        elif ch == "e":
            idx = (idx << 1) | 1
        else:
            raise ValueError(f"basis string may contain only 'g'/'e', got {basis!r}")
    return idx


def basis_string(index: int, n_qubits: int) -> str:
    """Inverse of basis_index."""
    return format(index, f"0{n_qubits}b").replace("0", "g").replace("1", "e")


def basis_probability(r: Register, basis: str) -> float:
    """Probability of projecting onto the given computational basis ket."""
    if len(basis) != r.n_qubits:
        raise ValueError(f"basis string length {len(basis)} != {r.n_qubits} qubits")
    return float(abs(r.amplitudes[basis_index(basis)]) ** 2)


def overlap_fidelity(a: Register, b: Register) -> float:
    """|<a|b>|^2, insensitive to global phase."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("registers have different qubit counts")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def sample_outcomes(r: Register, n_shots: int, seed: int) -> dict[str, int]:
    """Born-rule sampling: map of basis string -> count, deterministic per seed."""
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    probs = np.abs(r.amplitudes) ** 2
    probs = probs / probs.sum()  # remove roundoff before multinomial
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(n_shots, probs)
    return {
        basis_string(i, r.n_qubits): int(c) for i, c in enumerate(counts) if c > 0
    }
