"""Dense statevector simulator for small qubit registers.

Basis convention: qubit 0 is the least significant bit of the basis index,
so amplitude ``amps[i]`` belongs to the computational state whose qubit q
holds bit ``(i >> q) & 1``.  All operations are functional: they validate
their inputs, leave the argument untouched, and return a fresh state.
Measurement randomness always comes from an explicit ``numpy.random.Generator``
passed by the caller; nothing in this module reads a global stream.

Intended scale is a couple dozen qubits at most.  Everything is a plain
dense ``complex128`` vector and no gate fusion or sparsity tricks are
attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

# Norm drift allowed at construction; unitary ops keep states far inside this.
NORM_TOL = 1e-9

# theta_of_k may be a callable on register values or a precomputed sequence
PhaseMap = Callable[[int], float] | Sequence[float] | np.ndarray


class StateVector:
    """Normalized amplitudes over the 2**num_qubits computational basis.

    The constructor copies the amplitude buffer, checks the length, rejects
    non-finite entries, and rejects vectors whose squared norm strays more
    than NORM_TOL from 1.  Zero-qubit registers are rejected outright.
    """

    __slots__ = ("num_qubits", "amps")

    def __init__(self, num_qubits: int, amps: Iterable[complex]) -> None:
        if num_qubits < 1:
            raise ValueError("state needs at least one qubit")
        arr = np.array(amps, dtype=np.complex128)
        dim = 1 << num_qubits
        if arr.shape != (dim,):
            raise ValueError(
                f"expected {dim} amplitudes for {num_qubits} qubits, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.real(np.vdot(arr, arr)))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"squared norm {norm_sq!r} is not within {NORM_TOL} of 1")
        self.num_qubits = num_qubits
        self.amps = arr

    def probabilities(self) -> np.ndarray:
        """Born weights of every basis state, in index order."""
        return np.abs(self.amps) ** 2

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True)
class MeasurementOutcome:
    """Result of a projective measurement: sampled value plus collapsed state."""

    value: int
    collapsed: StateVector


def basis_state(num_qubits: int, index: int) -> StateVector:
    """Computational basis state |index> on num_qubits qubits."""
    if num_qubits < 1:
        raise ValueError("state needs at least one qubit")
    dim = 1 << num_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
    arr = np.zeros(dim, dtype=np.complex128)
    arr[index] = 1.0
    return StateVector(num_qubits, arr)


def _check_qubit(state: StateVector, qubit: int, role: str = "qubit") -> int:
    qubit = int(qubit)
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(f"{role} index {qubit} out of range for {state.num_qubits} qubits")
    return qubit


def _check_register(
    state: StateVector, register: Sequence[int], allow_empty: bool = False
) -> tuple[int, ...]:
    reg = tuple(int(q) for q in register)
    if not reg and not allow_empty:
        raise ValueError("register must name at least one qubit")
    for q in reg:
        _check_qubit(state, q, role="register qubit")
    if len(set(reg)) != len(reg):
        raise ValueError(f"register qubits must be distinct, got {reg}")
    return reg


def _register_values(num_qubits: int, register: tuple[int, ...]) -> np.ndarray:
    """Register value carried by each basis index; register[0] is the LSB."""
    idx = np.arange(1 << num_qubits)
    k = np.zeros_like(idx)
    for pos, q in enumerate(register):
        k |= ((idx >> q) & 1) << pos
    return k


def _scatter_bits(values: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    """Global basis indices with bit pattern `values` laid onto `qubits`."""
    out = np.zeros_like(values)
    for pos, q in enumerate(qubits):
        out |= ((values >> pos) & 1) << q
    return out


def _gather_indices(num_qubits: int, register: tuple[int, ...]) -> np.ndarray:
    """2D view-index: row = register value, column = value of the other qubits."""
    rest = tuple(q for q in range(num_qubits) if q not in register)
    reg_side = _scatter_bits(np.arange(1 << len(register)), register)
    rest_side = _scatter_bits(np.arange(1 << len(rest)), rest)
    return reg_side[:, None] | rest_side[None, :]


def hadamard(state: StateVector, target: int) -> StateVector:
    """Apply a Hadamard to one qubit."""
    target = _check_qubit(state, target, role="target")
    idx = np.arange(state.amps.size)
    lo = np.nonzero(((idx >> target) & 1) == 0)[0]
    hi = lo + (1 << target)
    a0 = state.amps[lo]
    a1 = state.amps[hi]
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    new = np.empty_like(state.amps)
    new[lo] = (a0 + a1) * inv_sqrt2
    new[hi] = (a0 - a1) * inv_sqrt2
    return StateVector(state.num_qubits, new)


def z_phase(state: StateVector, target: int, theta: float) -> StateVector:
    """Z-axis rotation diag(e^{i*theta}, e^{-i*theta}) on one qubit.

    The |0> component picks up e^{+i*theta}; |1> picks up the conjugate.
    """
    target = _check_qubit(state, target, role="target")
    theta = float(theta)
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    bit = (np.arange(state.amps.size) >> target) & 1
    phase = np.exp(1j * theta * (1.0 - 2.0 * bit))
    return StateVector(state.num_qubits, state.amps * phase)


def _evaluate_phases(theta_of_k: PhaseMap, count: int) -> np.ndarray:
    if callable(theta_of_k):
        thetas = np.asarray([float(theta_of_k(k)) for k in range(count)], dtype=np.float64)
    else:
        thetas = np.asarray(theta_of_k, dtype=np.float64)
        if thetas.shape != (count,):
            raise ValueError(
                f"phase table has shape {thetas.shape}, expected ({count},)"
            )
    if not np.all(np.isfinite(thetas)):
        raise ValueError("phase map must be finite for every register value")
    return thetas


def indexed_phase(
    state: StateVector,
    register: Sequence[int],
    photon: int,
    theta_of_k: PhaseMap,
) -> StateVector:
    """Register-controlled Z rotation of the photon qubit.

    For each register value k the photon qubit is rotated by z_phase with
    angle theta_of_k(k), applied coherently across the superposition.  An
    empty register degenerates to a plain z_phase with angle theta_of_k(0).

    Args:
        register: qubit indices holding k; register[0] is the LSB of k.
        photon: qubit being rotated; must not appear in register.
        theta_of_k: callable on range(2**len(register)), or a same-length
            sequence of angles.
    """
    reg = _check_register(state, register, allow_empty=True)
    photon = _check_qubit(state, photon, role="photon")
    if photon in reg:
        raise ValueError(f"photon qubit {photon} overlaps the register {reg}")
    thetas = _evaluate_phases(theta_of_k, 1 << len(reg))
    k = _register_values(state.num_qubits, reg)
    bit = (np.arange(state.amps.size) >> photon) & 1
    phase = np.exp(1j * thetas[k] * (1.0 - 2.0 * bit))
    return StateVector(state.num_qubits, state.amps * phase)


def diagonal_phase(
    state: StateVector, register: Sequence[int], theta_of_k: PhaseMap
) -> StateVector:
    """Diagonal rotation |k> -> e^{i*theta_of_k(k)} |k> on a register."""
    reg = _check_register(state, register)
    thetas = _evaluate_phases(theta_of_k, 1 << len(reg))
    k = _register_values(state.num_qubits, reg)
    return StateVector(state.num_qubits, state.amps * np.exp(1j * thetas[k]))


def _fourier(state: StateVector, register: Sequence[int], inverse: bool) -> StateVector:
    reg = _check_register(state, register)
    joint = _gather_indices(state.num_qubits, reg)
    block = state.amps[joint]
    if inverse:
        block = np.fft.fft(block, axis=0, norm="ortho")
    else:
        block = np.fft.ifft(block, axis=0, norm="ortho")
    new = np.empty_like(state.amps)
    new[joint] = block
    return StateVector(state.num_qubits, new)


def qft(state: StateVector, register: Sequence[int]) -> StateVector:
    """Fourier transform on a register.

    Convention: |k> maps to (1/sqrt(2**r)) * sum_j e^{+2*pi*i*j*k/2**r} |j>,
    with r = len(register).  Applied to |0...0> this yields the uniform
    superposition over register values.
    """
    return _fourier(state, register, inverse=False)


def inverse_qft(state: StateVector, register: Sequence[int]) -> StateVector:
    """Inverse of qft: e^{-2*pi*i*j*k/2**r} kernel.

    Feeding it amplitudes proportional to e^{+2*pi*i*k*m/2**r} over register
    values k returns the basis state |m> exactly.
    """
    return _fourier(state, register, inverse=True)


def measure(
    state: StateVector, qubits: Sequence[int], rng: np.random.Generator
) -> MeasurementOutcome:
    """Projective measurement of the named qubits in the computational basis.

    The sampled value reads qubits[0] as its LSB.  Measured qubits are
    removed from the collapsed state; the survivors keep their relative
    order and are renumbered from 0 in ascending original index.  When every
    qubit is measured the collapsed state keeps the full register width and
    is the basis state that was sampled.

    Args:
        qubits: distinct qubit indices; an empty selection is rejected.
        rng: explicit random stream used for the Born-rule draw.
    """
    reg = _check_register(state, qubits)
    joint = _gather_indices(state.num_qubits, reg)
    block = state.amps[joint]
    weights = np.sum(np.abs(block) ** 2, axis=1)
    # scale the draw by the realized total instead of renormalizing weights
    draw = rng.random() * float(weights.sum())
    value = int(np.searchsorted(np.cumsum(weights), draw, side="right"))
    value = min(value, weights.size - 1)

    if len(reg) == state.num_qubits:
        global_index = int(_scatter_bits(np.asarray([value]), reg)[0])
        amp = state.amps[global_index]
        new = np.zeros_like(state.amps)
        new[global_index] = amp / abs(amp)
        return MeasurementOutcome(value, StateVector(state.num_qubits, new))

    survivor = block[value, :]
    survivor = survivor / np.linalg.norm(survivor)
    return MeasurementOutcome(value, StateVector(state.num_qubits - len(reg), survivor))
