"""Phase-estimation synchronization over the ticking-qubit channel.

One protocol run spends exactly one oracle query: prepare a uniform rate
register with a Fourier transform, put the photon on the equator, make the
single coherent query, measure the photon, then invert the Fourier
transform and read the register.  A photon outcome of 1 lands on the
conjugate phase branch, which post-processing folds back by negating the
register value mod 2**n'.

Success for a target precision of n bits means circular distance strictly
below 2**-n between the estimate and omega0*T mod 1.  On n-bit grid phases
the estimate is exact; off the grid a bare register succeeds with
probability at least 4/pi**2, and widening the register per
`boosted_register_size` pushes the failure rate below a chosen delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clock import ClockModel, ResourceLedger, tqh_oracle
from .qsim import (
    StateVector,
    basis_state,
    hadamard,
    indexed_phase,
    inverse_qft,
    measure,
    qft,
)


def circular_distance(a: float, b: float) -> float:
    """Distance between two phase fractions on the unit circle, in [0, 1/2]."""
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def boosted_register_size(n_bits: int, delta: float) -> int:
    """Register width needed for n_bits of precision with failure rate <= delta.

    Computes n_bits + ceil(log2(2 + 1/(2*delta))).  A tiny guard is
    subtracted before the ceiling so dyadic deltas that land exactly on an
    integer boundary are not bumped a level by float rounding.
    """
    if n_bits < 1:
        raise ValueError("n_bits must be at least 1")
    if not (0.0 < delta < 0.5):
        raise ValueError(f"delta must lie in (0, 1/2), got {delta!r}")
    extra = math.ceil(math.log2(2.0 + 1.0 / (2.0 * delta)) - 1e-12)
    return n_bits + extra


@dataclass(frozen=True)
class ProtocolConfig:
    """Requested precision n_bits plus optional failure budget delta."""

    n_bits: int
    delta: float | None = None

    def __post_init__(self) -> None:
        if self.n_bits < 1:
            raise ValueError("n_bits must be at least 1")
        if self.delta is not None and not (0.0 < self.delta < 0.5):
            raise ValueError(f"delta must lie in (0, 1/2), got {self.delta!r}")

    @property
    def effective_register(self) -> int:
        """Register width actually used: n_bits, widened when delta is set."""
        if self.delta is None:
            return self.n_bits
        return boosted_register_size(self.n_bits, self.delta)


@dataclass(frozen=True)
class SyncEstimate:
    """Outcome of one run: raw register value and the decoded offset."""

    raw_m: int
    photon_bit: int
    phase_hat: float
    T_hat: float


def _fold_conjugate(m: int, n_prime: int) -> int:
    """Map a conjugate-branch register value back to the primary branch."""
    size = 1 << n_prime
    return (size - m) % size


def _nearest_grid_index(m: int, n_prime: int, n_bits: int) -> int:
    """Nearest n_bits-bit fraction to m/2**n_prime, ties toward the smaller.

    Pure integer arithmetic: shift out the d = n_prime - n_bits low bits
    with rounding, wrapping mod 2**n_bits.
    """
    d = n_prime - n_bits
    if d == 0:
        return m % (1 << n_bits)
    half = 1 << (d - 1)
    return ((m + half - 1) >> d) % (1 << n_bits)


def _final_joint_state(n_prime: int, phi: float) -> StateVector:
    """Pre-measurement joint state of register and photon for a true phase phi.

    Register occupies qubits 0..n_prime-1, photon is qubit n_prime.  The
    inverse Fourier transform commutes with the photon measurement, so this
    single state yields exact outcome statistics for the whole run.
    """
    reg = range(n_prime)
    photon = n_prime
    state = basis_state(n_prime + 1, 0)
    state = qft(state, reg)
    state = hadamard(state, photon)
    thetas = 2.0 * np.pi * ((np.arange(1 << n_prime) * phi) % 1.0)
    state = indexed_phase(state, reg, photon, thetas)
    return inverse_qft(state, reg)


def run_sync(
    config: ProtocolConfig,
    clock: ClockModel,
    rng: np.random.Generator,
    ledger: ResourceLedger | None = None,
) -> SyncEstimate:
    """Execute one synchronization run and decode the clock offset.

    Spends exactly one oracle query on a register of config.effective_register
    qubits.  phase_hat is raw_m / 2**n' folded for the photon branch and
    rounded to the nearest n_bits-bit fraction; T_hat = phase_hat / omega0.
    """
    n_prime = config.effective_register
    reg = range(n_prime)
    photon = n_prime

    state = basis_state(n_prime + 1, 0)
    state = qft(state, reg)
    state = hadamard(state, photon)
    state = tqh_oracle(clock, state, reg, photon, ledger)

    photon_out = measure(state, [photon], rng)
    register_out = measure(inverse_qft(photon_out.collapsed, reg), reg, rng)

    m = register_out.value
    if photon_out.value == 1:
        m = _fold_conjugate(m, n_prime)
    grid_index = _nearest_grid_index(m, n_prime, config.n_bits)
    phase_hat = grid_index / float(1 << config.n_bits)
    return SyncEstimate(
        raw_m=m,
        photon_bit=photon_out.value,
        phase_hat=phase_hat,
        T_hat=phase_hat / clock.omega0,
    )


def _validated_phase(phi: float) -> float:
    phi = float(phi)
    if not (math.isfinite(phi) and 0.0 <= phi < 1.0):
        raise ValueError(f"phase fraction must lie in [0, 1), got {phi!r}")
    return phi


def success_probability_exact(n_prime: int, phi: float, n_bits: int) -> float:
    """Exact probability that a run estimates phi to within 2**-n_bits.

    Enumerates the Born weights of the pre-measurement joint state and sums
    those (register, photon) outcomes whose post-processed phase_hat lies at
    circular distance strictly below 2**-n_bits from phi.  No sampling.
    """
    if n_prime < 1:
        raise ValueError("register needs at least one qubit")
    if not 1 <= n_bits <= n_prime:
        raise ValueError(f"n_bits must lie in [1, {n_prime}], got {n_bits}")
    phi = _validated_phase(phi)

    probs = _final_joint_state(n_prime, phi).probabilities()
    size = 1 << n_prime
    tol = 2.0 ** (-n_bits)
    total = 0.0
    for photon_bit in (0, 1):
        for j in range(size):
            m = _fold_conjugate(j, n_prime) if photon_bit else j
            grid_index = _nearest_grid_index(m, n_prime, n_bits)
            phase_hat = grid_index / float(1 << n_bits)
            if circular_distance(phase_hat, phi) < tol:
                total += float(probs[j + (photon_bit << n_prime)])
    return total


def photon_zero_probability(n_prime: int, phi: float) -> float:
    """Exact probability of reading photon_bit = 0; 1/2 for every phi."""
    if n_prime < 1:
        raise ValueError("register needs at least one qubit")
    phi = _validated_phase(phi)
    probs = _final_joint_state(n_prime, phi).probabilities()
    return float(np.sum(probs[: 1 << n_prime]))


def min_success_on_grid(
    n_prime: int, n_bits: int, grid_points: int
) -> tuple[float, float]:
    """Scan phi over a uniform grid and return (worst phi, worst probability)."""
    if grid_points < 1:
        raise ValueError("grid needs at least one point")
    worst_phi = 0.0
    worst_prob = math.inf
    for g in range(grid_points):
        phi = g / grid_points
        p = success_probability_exact(n_prime, phi, n_bits)
        if p < worst_prob:
            worst_phi, worst_prob = phi, p
    return worst_phi, worst_prob
