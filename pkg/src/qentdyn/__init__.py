"""Entanglement dynamics of moving qubits dissipating into a common lossy
cavity: closed-form survival amplitudes, pairwise concurrences, and two
independent numerical oracles."""

from .core import (
    BETA_LIMIT,
    CouplingProfile,
    CubicRoots,
    DegenerateRootsError,
    EnvironmentParams,
    IntegratorError,
    MotionProfile,
    NumericError,
    ParameterError,
    StateError,
    SurvivalAmplitude,
    build_survival,
    correlation_kernel,
    solve_cubic,
    survival_amplitude,
    y_plus_minus,
)
from .multi_qubit import (
    StationaryGraph,
    concurrence_jl,
    concurrence_jm,
    concurrence_km,
    pair_density_matrix,
    stationary_graph,
    stationary_table,
    superposition_amplitudes,
    werner_pair_concurrence,
    werner_survival,
)
from .oracles import (
    DiscreteModeModel,
    VolterraConfig,
    discrete_mode_simulate,
    lorentzian_model,
    unequal_velocity_run,
    volterra_solve,
    volterra_survival,
)
from .two_qubit import (
    ConcurrenceSeries,
    InitialStateTwoQubit,
    TwoQubitAmplitudes,
    amplitude_series,
    amplitudes_at,
    closed_form_concurrence,
    concurrence_closed,
    concurrence_series,
    concurrence_wootters,
    density_matrix,
    single_excitation_density,
    stationary_concurrence,
)

__version__ = "0.1.0"
