"""Two equal-velocity qubits in the common cavity: amplitudes, density
matrix, Wootters and closed-form concurrence, stationary concurrence."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CouplingProfile,
    ParameterError,
    StateError,
    SurvivalAmplitude,
)

_SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=float,
)


@dataclass(frozen=True)
class InitialStateTwoQubit:
    """Single-excitation initial state parametrized by the separability
    parameter s in [-1, 1] and relative phase phi.

    c01 = sqrt((1-s)/2) multiplies |e,g>, c02 = sqrt((1+s)/2) e^{i phi}
    multiplies |g,e>; s = 0 is maximally entangled, s = +-1 a product state.
    """

    s: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not -1.0 <= self.s <= 1.0:
            raise ParameterError(f"s must lie in [-1, 1], got {self.s}")

    @property
    def c01(self) -> float:
        return math.sqrt((1.0 - self.s) / 2.0)

    @property
    def c02(self) -> complex:
        return math.sqrt((1.0 + self.s) / 2.0) * cmath.exp(1j * self.phi)

    @property
    def initial_concurrence(self) -> float:
        return 2.0 * abs(self.c01 * self.c02)

    def projections(self, r1: float, r2: float) -> tuple[complex, complex]:
        """Overlaps with the superradiant / subradiant states.

        (These are the paper-independent decay and decoherence-free
        components; the subradiant one is conserved for all times.)
        """
        return r1 * self.c01 + r2 * self.c02, r2 * self.c01 - r1 * self.c02


@dataclass(frozen=True)
class TwoQubitAmplitudes:
    """Complex amplitudes of |e,g> and |g,e> at one instant."""

    c1: complex
    c2: complex

    def __post_init__(self) -> None:
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if norm > 1.0 + 1e-9:
            raise StateError(f"excitation norm {norm} exceeds 1")


@dataclass(frozen=True)
class ConcurrenceSeries:
    """Concurrence sampled on a time grid plus its analytic stationary value."""

    taus: np.ndarray
    values: np.ndarray
    stationary: float


def _check_pair(coupling: CouplingProfile) -> tuple[float, float]:
    if len(coupling.r) != 2:
        raise ParameterError(f"need exactly two coupling entries, got {len(coupling.r)}")
    return coupling.r


def amplitude_series(taus, coupling, init, surv):
    """Vectorized amplitudes c1(tau), c2(tau) over a time grid."""
    r1, r2 = _check_pair(coupling)
    proj_plus, proj_minus = init.projections(r1, r2)
    e = surv(np.asarray(taus, dtype=float))
    c1 = r2 * proj_minus + r1 * e * proj_plus
    c2 = -r1 * proj_minus + r2 * e * proj_plus
    return c1, c2


def amplitudes_at(
    tau: float,
    coupling: CouplingProfile,
    init: InitialStateTwoQubit,
    surv: SurvivalAmplitude,
) -> TwoQubitAmplitudes:
    if tau < 0:
        raise ParameterError("tau must be non-negative")
    c1, c2 = amplitude_series(np.array([tau]), coupling, init, surv)
    return TwoQubitAmplitudes(complex(c1[0]), complex(c2[0]))


def single_excitation_density(c1: complex, c2: complex) -> np.ndarray:
    """4x4 density matrix of a single-excitation two-qubit state in the
    {|e,e>, |e,g>, |g,e>, |g,g>} basis."""
    ground = 1.0 - abs(c1) ** 2 - abs(c2) ** 2
    if ground < -1e-9:
        raise StateError(f"ground population {ground} below zero")
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = abs(c1) ** 2
    rho[2, 2] = abs(c2) ** 2
    rho[1, 2] = c1 * np.conj(c2)
    rho[2, 1] = np.conj(rho[1, 2])
    rho[3, 3] = max(ground, 0.0)
    return rho


def density_matrix(amps: TwoQubitAmplitudes) -> np.ndarray:
    return single_excitation_density(amps.c1, amps.c2)


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    if vals.min() < -1e-10:
        raise StateError(f"density matrix has negative eigenvalue {vals.min()}")
    return (vecs * np.sqrt(np.maximum(vals, 0.0))) @ vecs.conj().T


def concurrence_wootters(rho: np.ndarray) -> float:
    """Concurrence from the spectrum of rho * rho_tilde, where rho_tilde is
    the double spin-flip conjugate of rho.

    The square-rooted eigenvalues are evaluated as the singular values of
    sqrt(rho) sqrt(rho_tilde) (same spectrum, but accurate to machine
    precision even for the vanishing eigenvalues)."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise StateError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-9:
        raise StateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-9:
        raise StateError("density matrix trace differs from 1")
    rho_tilde = _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    sq = np.linalg.svd(_psd_sqrt(rho) @ _psd_sqrt(rho_tilde), compute_uv=False)
    return float(min(max(sq[0] - sq[1] - sq[2] - sq[3], 0.0), 1.0))


def closed_form_concurrence(c1, c2):
    """2 |c1| |c2| clamped to [0, 1]; works on scalars or arrays."""
    val = 2.0 * np.abs(c1) * np.abs(c2)
    if np.max(val) > 1.0 + 1e-9:
        raise StateError(f"concurrence {np.max(val)} exceeds 1 beyond tolerance")
    out = np.clip(val, 0.0, 1.0)
    return float(out) if np.isscalar(val) or out.ndim == 0 else out


def concurrence_closed(amps: TwoQubitAmplitudes) -> float:
    return closed_form_concurrence(amps.c1, amps.c2)


def stationary_concurrence(r1: float, init: InitialStateTwoQubit) -> float:
    """Long-time concurrence 2 |r1 r2| |proj_minus|^2 carried by the
    decoherence-free component; independent of velocity and of R."""
    if not 0.0 <= r1 <= 1.0:
        raise ParameterError(f"r1 must lie in [0, 1], got {r1}")
    r2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
    _, proj_minus = init.projections(r1, r2)
    return float(min(2.0 * abs(r1 * r2) * abs(proj_minus) ** 2, 1.0))


def concurrence_series(
    taus,
    coupling: CouplingProfile,
    init: InitialStateTwoQubit,
    surv: SurvivalAmplitude,
) -> ConcurrenceSeries:
    taus = np.asarray(taus, dtype=float)
    c1, c2 = amplitude_series(taus, coupling, init, surv)
    r1 = coupling.r[0]
    return ConcurrenceSeries(
        taus=taus,
        values=closed_form_concurrence(c1, c2),
        stationary=stationary_concurrence(r1, init),
    )
