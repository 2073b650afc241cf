"""Independent reference computations for the test suite.

Everything here is derived straight from the math with explicit matrices,
Fractions, or closed forms, never by calling into the package, so tests
compare two separately written derivations of the same quantity.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def dft_matrix(size: int, sign: int) -> np.ndarray:
    """Unitary DFT matrix with kernel e^{sign * 2*pi*i*j*k/size}."""
    j = np.arange(size)
    return np.exp(sign * 2j * np.pi * np.outer(j, j) / size) / np.sqrt(size)


def fourier_on_register(
    amps: np.ndarray, num_qubits: int, register: tuple[int, ...], sign: int
) -> np.ndarray:
    """Apply the DFT matrix to a register inside a larger state, brute force.

    register[0] holds the least significant bit of the transformed value.
    """
    dim = len(amps)
    matrix = dft_matrix(1 << len(register), sign)
    rest = [q for q in range(num_qubits) if q not in register]
    out = np.zeros(dim, dtype=complex)
    for rest_bits in range(1 << len(rest)):
        base = 0
        for pos, q in enumerate(rest):
            base |= ((rest_bits >> pos) & 1) << q
        idx = []
        for k in range(1 << len(register)):
            full = base
            for pos, q in enumerate(register):
                full |= ((k >> pos) & 1) << q
            idx.append(full)
        out[idx] = matrix @ amps[idx]
    return out


def circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def nearest_fraction_index(m: int, n_prime: int, n_bits: int) -> int:
    """Nearest n_bits-bit grid index to m/2**n_prime via exact rationals.

    Ties go to the smaller index; the result wraps mod 2**n_bits.
    """
    scaled = Fraction(m, 1 << n_prime) * (1 << n_bits)
    lo = math.floor(scaled)
    hi = lo + 1
    choice = lo if (scaled - lo) <= (hi - scaled) else hi
    return choice % (1 << n_bits)


def fold_weight(n_prime: int, phi: float, m: int) -> float:
    """Total probability (both photon branches) of folded register value m.

    Closed form |sin(N*pi*d) / (N*sin(pi*d))|**2 with d = phi - m/N.
    """
    N = 1 << n_prime
    d = phi - m / N
    den = N * math.sin(math.pi * d)
    if abs(den) < 1e-12:
        return 1.0
    return (math.sin(math.pi * N * d) / den) ** 2


def closed_form_success(n_prime: int, phi: float, n_bits: int) -> float:
    """Success probability summed from the phase-estimation kernel."""
    N = 1 << n_prime
    tol = 2.0 ** (-n_bits)
    total = 0.0
    for m in range(N):
        j = nearest_fraction_index(m, n_prime, n_bits)
        if circular_distance(j / (1 << n_bits), phi) < tol:
            total += fold_weight(n_prime, phi, m)
    return total


def four_sigma(p: float, trials: int) -> float:
    """4-sigma binomial half-width for an empirical rate estimate."""
    return 4.0 * math.sqrt(max(p * (1.0 - p), 1e-12) / trials)


def random_state(num_qubits: int, seed: int) -> np.ndarray:
    """Haar-ish random normalized amplitude vector from a fixed seed."""
    rng = np.random.default_rng(seed)
    raw = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return raw / np.linalg.norm(raw)
