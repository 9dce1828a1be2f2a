"""n equal-velocity, equally coupled qubits: Werner-state decay and the
superposition-of-two / single-excitation initial states with all pairwise
concurrences and their stationary graphs.

Conventions: qubits are labelled 0..n-1; the initially excited pair is
(j, l) = (0, 1).  The common per-qubit coupling g enters only through
effective_R2 = n * (g W / lambda)^2, so werner_survival takes env.R as the
per-qubit ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import EnvironmentParams, ParameterError, SurvivalAmplitude, build_survival
from .two_qubit import (
    InitialStateTwoQubit,
    closed_form_concurrence,
    single_excitation_density,
)

MAX_TABLE_N = 10**6
MAX_DYNAMIC_N = 32


def werner_survival(n: int, env: EnvironmentParams, beta: float) -> SurvivalAmplitude:
    """Survival amplitude D(tau) of the equal-weight single-excitation
    superposition over n qubits; identical to the two-qubit E(tau) with the
    coupling scaled by sqrt(n)."""
    if n < 1:
        raise ParameterError(f"need at least one qubit, got n={n}")
    return build_survival(env, beta, n * env.R**2)


def werner_pair_concurrence(n: int, d_value):
    """Pairwise concurrence 2 |D|^2 / n of the Werner scenario."""
    if n < 2:
        raise ParameterError(f"pairwise concurrence needs n >= 2, got {n}")
    mag2 = np.abs(d_value) ** 2
    if np.max(mag2) > 1.0 + 1e-9:
        raise ParameterError("|D| exceeds 1 beyond tolerance")
    out = np.clip(2.0 * mag2 / n, 0.0, 1.0)
    return float(out) if np.isscalar(d_value) else out


def superposition_amplitudes(n: int, init: InitialStateTwoQubit, d_value):
    """Amplitudes (C1, C2, C3) of the excited pair and of the equal-weight
    rest, given the survival amplitude value(s) D.

    C3 is identically zero for n = 2.  Works on scalars or arrays of D.
    """
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    c01, c02 = init.c01, init.c02
    d = np.asarray(d_value, dtype=complex)
    csum = c01 + c02
    C1 = ((n - 1) * c01 - c02) / n + csum / n * d
    C2 = ((n - 1) * c02 - c01) / n + csum / n * d
    C3 = math.sqrt(n - 2) / n * csum * (d - 1.0)
    if np.isscalar(d_value):
        return complex(C1), complex(C2), complex(C3)
    return C1, C2, C3


def concurrence_jl(C1, C2):
    """Concurrence between the two initially excited qubits."""
    return closed_form_concurrence(C1, C2)


def concurrence_jm(n: int, C1, C3):
    """Concurrence between an initially excited qubit and an initially
    ground one; defined for n > 2 only."""
    if n <= 2:
        raise ParameterError(f"concurrence_jm requires n > 2, got {n}")
    return closed_form_concurrence(C1, C3 / math.sqrt(n - 2))


def concurrence_km(n: int, C3):
    """Concurrence between two initially ground qubits; n > 2 only."""
    if n <= 2:
        raise ParameterError(f"concurrence_km requires n > 2, got {n}")
    c = C3 / math.sqrt(n - 2)
    return closed_form_concurrence(c, c)


def pair_density_matrix(n: int, C1, C2, C3, pair: str) -> np.ndarray:
    """Reduced 4x4 density matrix of a qubit pair, by closed-form partial
    trace in the single-excitation sector.

    pair is 'jl' (both initially excited), 'jm' (excited + ground) or
    'km' (both ground)."""
    if pair == "jl":
        return single_excitation_density(C1, C2)
    if n <= 2:
        raise ParameterError(f"pair {pair!r} requires n > 2, got {n}")
    c_rest = C3 / math.sqrt(n - 2)
    if pair == "jm":
        return single_excitation_density(C1, c_rest)
    if pair == "km":
        return single_excitation_density(c_rest, c_rest)
    raise ParameterError(f"unknown pair {pair!r}; expected 'jl', 'jm' or 'km'")


_SCENARIOS = ("two-excitation", "one-excitation")


def _default_init(scenario: str, init: InitialStateTwoQubit | None) -> InitialStateTwoQubit:
    if scenario not in _SCENARIOS:
        raise ParameterError(f"unknown scenario {scenario!r}; expected one of {_SCENARIOS}")
    if init is not None:
        return init
    if scenario == "two-excitation":
        return InitialStateTwoQubit(s=0.0, phi=0.0)
    return InitialStateTwoQubit(s=-1.0, phi=0.0)  # only qubit 0 excited


def stationary_table(
    n_values,
    scenario: str,
    init: InitialStateTwoQubit | None = None,
) -> list[dict]:
    """Per-n stationary pairwise concurrences (the D -> 0 limit).

    Rows carry 'c_jl'/'c_jm'/'c_km' for the two-excitation scenario and
    'c_lm'/'c_km' for the one-excitation one; entries needing n > 2 are None
    at n = 2."""
    n_values = list(n_values)
    if not n_values:
        raise ParameterError("empty n range")
    init = _default_init(scenario, init)
    rows = []
    for n in n_values:
        if n < 2:
            raise ParameterError(f"need n >= 2, got {n}")
        if n > MAX_TABLE_N:
            raise ParameterError(f"n={n} exceeds table cap {MAX_TABLE_N}")
        C1, C2, C3 = superposition_amplitudes(n, init, 0.0)
        if scenario == "two-excitation":
            rows.append(
                {
                    "n": n,
                    "c_jl": concurrence_jl(C1, C2),
                    "c_jm": concurrence_jm(n, C1, C3) if n > 2 else None,
                    "c_km": concurrence_km(n, C3) if n > 2 else None,
                }
            )
        else:
            rows.append(
                {
                    "n": n,
                    "c_lm": concurrence_jl(C1, C2),
                    "c_km": concurrence_km(n, C3) if n > 2 else None,
                }
            )
    return rows


@dataclass(frozen=True)
class StationaryGraph:
    """Complete weighted graph over the qubits; edge weights are stationary
    pairwise concurrences."""

    n: int
    scenario: str
    edges: dict

    def weight(self, i: int, j: int) -> float:
        return self.edges[(min(i, j), max(i, j))]

    def weight_classes(self, tol: float = 1e-9) -> list[float]:
        """Distinct edge weights (descending), merging values within tol."""
        classes: list[float] = []
        for w in sorted(self.edges.values(), reverse=True):
            if not classes or abs(classes[-1] - w) > tol:
                classes.append(w)
        return classes


def stationary_graph(
    n: int,
    scenario: str,
    init: InitialStateTwoQubit | None = None,
) -> StationaryGraph:
    """Stationary entanglement graph: nodes 0..n-1, every pair weighted by
    its stationary concurrence.  Node 0 (and 1 in the two-excitation case)
    is an initially excited qubit."""
    if n < 3:
        raise ParameterError(f"stationary graph needs n >= 3, got {n}")
    init = _default_init(scenario, init)
    C1, C2, C3 = superposition_amplitudes(n, init, 0.0)
    edges = {}
    if scenario == "two-excitation":
        w_jl = concurrence_jl(C1, C2)
        w_jm = concurrence_jm(n, C1, C3)
        w_lm = concurrence_jm(n, C2, C3)
        w_km = concurrence_km(n, C3)
        for i in range(n):
            for j in range(i + 1, n):
                if (i, j) == (0, 1):
                    edges[(i, j)] = w_jl
                elif i == 0:
                    edges[(i, j)] = w_jm
                elif i == 1:
                    edges[(i, j)] = w_lm
                else:
                    edges[(i, j)] = w_km
    else:
        w_hub = concurrence_jl(C1, C2)
        w_km = concurrence_km(n, C3)
        for i in range(n):
            for j in range(i + 1, n):
                edges[(i, j)] = w_hub if i == 0 else w_km
    return StationaryGraph(n=n, scenario=scenario, edges=edges)
