"""Shared test helpers: brute-force partial traces and reference formulas
kept deliberately independent of the library implementation."""

import numpy as np


def full_state(n, qubit_amps, ground_amp):
    """Pure state of n qubits + a one-excitation environment flag.

    Column 0 is the environment vacuum component, column 1 the component
    with the excitation lost to the environment (all qubits in the ground
    state).  Qubit k excited corresponds to bit n-1-k set."""
    dim = 2**n
    full = np.zeros((dim, 2), dtype=complex)
    for k, a in enumerate(qubit_amps):
        full[1 << (n - 1 - k), 0] = a
    full[0, 1] = ground_amp
    return full


def partial_trace_pair(rho, n, i, j):
    """Reduce an n-qubit density matrix to qubits (i, j), by direct summation
    over the computational basis.  Output basis: |ee>, |eg>, |ge>, |gg>."""
    dim = 2**n
    out = np.zeros((4, 4), dtype=complex)
    keep = (1 << (n - 1 - i)) | (1 << (n - 1 - j))
    rest = (dim - 1) ^ keep

    def pair_index(a):
        bi = (a >> (n - 1 - i)) & 1
        bj = (a >> (n - 1 - j)) & 1
        return ((1 - bi) << 1) | (1 - bj)

    for a in range(dim):
        for b in range(dim):
            if (a & rest) != (b & rest):
                continue
            out[pair_index(a), pair_index(b)] += rho[a, b]
    return out


def brute_force_pair_rho(n, qubit_amps, i, j):
    """Reduced pair density matrix of a single-excitation state, tracing the
    environment and the other n-2 qubits the slow way."""
    amps = np.asarray(qubit_amps, dtype=complex)
    ground = np.sqrt(max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2))))
    full = full_state(n, amps, ground)
    rho_sys = full[:, 0:1] @ full[:, 0:1].conj().T + full[:, 1:2] @ full[:, 1:2].conj().T
    return partial_trace_pair(rho_sys, n, i, j)


def survival_two_root(taus, effective_R2):
    """Motionless survival amplitude from the textbook two-root form:
    E = exp(-tau/2) [cosh(D tau/2) + sinh(D tau/2)/D], D = sqrt(1 - 2 c)."""
    taus = np.asarray(taus, dtype=float)
    D = np.sqrt(complex(1.0 - 2.0 * effective_R2))
    half = 0.5 * D * taus
    return np.exp(-0.5 * taus) * (np.cosh(half) + np.sinh(half) / D)


def random_single_excitation_amps(rng, n):
    """Random qubit amplitudes with total excitation norm <= 1."""
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    amps /= np.linalg.norm(amps)
    amps *= rng.uniform(0.0, 1.0)
    return amps
