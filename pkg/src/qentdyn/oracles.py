"""Independent numerical oracles for the closed-form results.

Two solvers, deliberately sharing no code path with the analytic formulas:

* a product-integration solver for the memory-kernel equation
  dE/dtau = -a * int_0^tau k(tau - tau') E(tau') dtau'
* a discrete-mode Schroedinger simulator of the microscopic qubits+modes
  model, including the moving-qubit shape function and unequal velocities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    EnvironmentParams,
    IntegratorError,
    NumericError,
    ParameterError,
    correlation_kernel,
)
from .two_qubit import closed_form_concurrence


@dataclass(frozen=True)
class VolterraConfig:
    """Discretization of the memory-kernel solver.

    quadrature_order 1 uses trapezoid product integration for the history
    sum, 2 a Simpson-type rule; time stepping is implicit trapezoid either
    way (second order)."""

    dt: float
    t_max: float
    quadrature_order: int = 1

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ParameterError("dt must be positive")
        if self.t_max <= 0:
            raise ParameterError("t_max must be positive")
        if self.t_max / self.dt > 1e7:
            raise ParameterError("grid too fine: t_max/dt exceeds 1e7")
        if self.quadrature_order not in (1, 2):
            raise ParameterError("quadrature_order must be 1 or 2")


@dataclass(frozen=True)
class VolterraResult:
    taus: np.ndarray
    values: np.ndarray
    error_estimate: float


def _history_weights(m: int, dt: float, order: int) -> np.ndarray:
    """Quadrature weights for int_0^{m dt} over m+1 uniform samples."""
    if m == 0:
        return np.zeros(1)
    if order == 1 or m == 1:
        w = np.full(m + 1, dt)
        w[0] = w[-1] = dt / 2.0
        return w
    w = np.zeros(m + 1)
    if m % 2 == 0:
        w[: m + 1] = _simpson(m, dt)
    elif m == 3:
        w[:] = np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * dt / 8.0)
    else:
        w[: m - 2] += _simpson(m - 3, dt)
        w[m - 3 :] += np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * dt / 8.0)
    return w


def _simpson(m: int, dt: float) -> np.ndarray:
    w = np.full(m + 1, 2.0 * dt / 3.0)
    w[1::2] = 4.0 * dt / 3.0
    w[0] = w[-1] = dt / 3.0
    return w


def _volterra_grid(effective_alpha2, kernel, dt, t_max, order):
    n_steps = int(round(t_max / dt))
    taus = np.arange(n_steps + 1) * dt
    kvals = np.asarray(kernel(taus), dtype=complex)
    bad = ~np.isfinite(kvals)
    if bad.any():
        raise NumericError(f"kernel non-finite at tau={taus[bad][0]}")
    krev = kvals[::-1].copy()
    nk = len(krev)

    e = np.zeros(n_steps + 1, dtype=complex)
    e[0] = 1.0
    a = effective_alpha2
    g_prev = 0.0 + 0j  # history term at tau_0
    k0 = kvals[0]
    for n in range(n_steps):
        m = n + 1
        # history integral at tau_m: sum_{i<=m} w_i k[m-i] e[i];
        # the unknown e[m] enters with weight w[m]*k0.
        if order == 1:
            ksec = krev[nk - m - 1 : nk - 1]
            known = dt * np.dot(ksec, e[:m]) - dt / 2.0 * ksec[0] * e[0]
            w_last = dt / 2.0
        else:
            w = _history_weights(m, dt, order)
            known = np.dot(krev[nk - m - 1 : nk - 1], w[:m] * e[:m])
            w_last = w[m]
        h = -a * known
        c_unknown = -a * w_last * k0
        e[m] = (e[n] + dt / 2.0 * (g_prev + h)) / (1.0 - dt / 2.0 * c_unknown)
        g_prev = h + c_unknown * e[m]
    return taus, e


def volterra_solve(effective_alpha2: float, kernel, cfg: VolterraConfig) -> VolterraResult:
    """Solve dE/dtau = -a int_0^tau k(tau-tau') E(tau') dtau', E(0) = 1.

    kernel must accept an array of non-negative time differences.  The error
    estimate is a Richardson comparison against a half-resolution run.
    """
    taus, e = _volterra_grid(
        effective_alpha2, kernel, cfg.dt, cfg.t_max, cfg.quadrature_order
    )
    _, e_coarse = _volterra_grid(
        effective_alpha2, kernel, 2.0 * cfg.dt, cfg.t_max, cfg.quadrature_order
    )
    # second-order scheme: fine-grid error ~ |fine - coarse| / 3
    err = float(np.max(np.abs(e[::2] - e_coarse)) / 3.0)
    return VolterraResult(taus=taus, values=e, error_estimate=err)


def volterra_survival(
    env: EnvironmentParams, beta: float, effective_R2: float, cfg: VolterraConfig
) -> VolterraResult:
    """Oracle counterpart of the closed-form survival amplitude."""
    if effective_R2 < 0:
        raise ParameterError("effective_R2 must be non-negative")
    if effective_R2 == 0:
        taus = np.arange(int(round(cfg.t_max / cfg.dt)) + 1) * cfg.dt
        return VolterraResult(taus, np.ones_like(taus, dtype=complex), 0.0)
    if env.W == 0:
        raise ParameterError("effective_R2 > 0 requires W > 0")
    # alpha2 * (W^2/2 prefactor of the kernel) must equal effective_R2 / 2
    alpha2 = effective_R2 / env.W**2
    return volterra_solve(alpha2, lambda d: correlation_kernel(d, env, beta), cfg)


@dataclass(frozen=True)
class DiscreteModeModel:
    """Finite sample of the cavity modes plus the moving qubits.

    omega_k / g_k  -- mode frequencies and real couplings (lambda units)
    gamma_transit  -- transit scale Gamma in the shape function
                      sin[omega_k (beta t - Gamma)]
    betas / alphas -- per-qubit velocity ratios and coupling strengths
    """

    omega_k: np.ndarray
    g_k: np.ndarray
    gamma_transit: float
    betas: tuple[float, ...]
    alphas: tuple[float, ...]
    omega0: float

    @property
    def n_qubits(self) -> int:
        return len(self.betas)


def lorentzian_model(
    n_qubits: int,
    K: int,
    env: EnvironmentParams,
    betas,
    alphas=None,
    half_width: float = 200.0,
    gamma_transit: float | None = None,
    t_max_hint: float = 20.0,
    phase_matched: bool = False,
) -> DiscreteModeModel:
    """Sample the Lorentzian spectral density on a uniform frequency grid.

    |g_k|^2 = J(omega_k) * domega on midpoints of [omega0 - D, omega0 + D].
    The default transit scale is >= 1e3 * t_max_hint (continuum regime).
    With phase_matched=True it is additionally snapped to an odd multiple of
    pi/(2 domega) so the rapidly oscillating half of sin^2 cancels pairwise
    across the grid instead of contributing a random offset; off by default
    to keep the oracle a plain transcription of the model.
    """
    if K < 2:
        raise ParameterError(f"need at least two modes, got K={K}")
    if half_width <= 0:
        raise ParameterError("half_width must be positive")
    ratio = env.omega0_ratio
    d_omega = 2.0 * half_width / K
    detuning = -half_width + (np.arange(K) + 0.5) * d_omega
    omega_k = ratio + detuning
    if np.any(omega_k <= 0):
        raise ParameterError("frequency window extends below zero")
    g2 = env.W**2 / math.pi * d_omega / (detuning**2 + 1.0)
    window_integral = env.W**2 * 2.0 / math.pi * math.atan(half_width)
    if env.W > 0 and abs(g2.sum() - window_integral) > 1e-3 * window_integral:
        raise ParameterError("mode sampling does not resolve the Lorentzian")
    gamma_min = gamma_transit if gamma_transit is not None else 1e3 * t_max_hint
    if phase_matched:
        half_period = math.pi / (2.0 * d_omega)
        m = math.ceil((gamma_min / half_period - 1.0) / 2.0)
        gamma = (2 * max(m, 0) + 1) * half_period
        gamma = max(gamma, half_period)
    else:
        gamma = gamma_min
    if alphas is None:
        alphas = (1.0 / math.sqrt(n_qubits),) * n_qubits
    betas = tuple(betas)
    if len(betas) != n_qubits or len(tuple(alphas)) != n_qubits:
        raise ParameterError("betas/alphas length must equal n_qubits")
    return DiscreteModeModel(
        omega_k=omega_k,
        g_k=np.sqrt(g2),
        gamma_transit=gamma,
        betas=betas,
        alphas=tuple(alphas),
        omega0=ratio,
    )


@dataclass(frozen=True)
class SimResult:
    taus: np.ndarray
    qubit_amps: np.ndarray  # shape (n_qubits, len(taus))
    final_mode_amps: np.ndarray
    norm_drift: float
    dt: float


def _rk4_run(model: DiscreteModeModel, init, t_max, dt, max_samples):
    n = model.n_qubits
    K = len(model.omega_k)
    omega = model.omega_k
    g = model.g_k
    delta = model.omega0 - omega
    gamma = model.gamma_transit
    alphas = np.asarray(model.alphas)
    betas = model.betas
    same_beta = len(set(betas)) == 1

    def rhs(t, y):
        cq = y[:n]
        cm = y[n:]
        phase = np.exp(1j * (delta * t))
        cm_ph = cm * phase
        dq = np.empty(n, dtype=complex)
        acc = np.zeros(K, dtype=complex)
        if same_beta:
            f = np.sin(omega * (betas[0] * t - gamma))
            gf = g * f
            for j in range(n):
                dq[j] = -1j * alphas[j] * np.dot(gf, cm_ph)
                acc += (alphas[j] * cq[j]) * f
        else:
            for j in range(n):
                f = np.sin(omega * (betas[j] * t - gamma))
                dq[j] = -1j * alphas[j] * np.dot(g * f, cm_ph)
                acc += (alphas[j] * cq[j]) * f
        dm = -1j * g * np.conj(phase) * acc
        return np.concatenate([dq, dm])

    n_steps = max(int(round(t_max / dt)), 1)
    stride = max(n_steps // max_samples, 1)
    y = np.concatenate([np.asarray(init, dtype=complex), np.zeros(K, dtype=complex)])
    taus = [0.0]
    amps = [y[:n].copy()]
    drift = 0.0
    t = 0.0
    for step in range(1, n_steps + 1):
        k1 = rhs(t, y)
        k2 = rhs(t + dt / 2.0, y + dt / 2.0 * k1)
        k3 = rhs(t + dt / 2.0, y + dt / 2.0 * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = step * dt
        if step % stride == 0 or step == n_steps:
            drift = max(drift, abs(np.vdot(y, y).real - 1.0))
            taus.append(t)
            amps.append(y[:n].copy())
    return SimResult(
        taus=np.array(taus),
        qubit_amps=np.array(amps).T,
        final_mode_amps=y[n:],
        norm_drift=drift,
        dt=dt,
    )


def discrete_mode_simulate(
    model: DiscreteModeModel,
    init,
    t_max: float,
    dt: float,
    norm_tol: float = 1e-8,
    max_samples: int = 2000,
    max_retries: int = 2,
) -> SimResult:
    """Fixed-step 4th-order integration of the qubit+mode amplitude
    equations in the interaction picture.

    The step is halved (up to max_retries times) until the excitation norm
    is conserved to norm_tol over the whole horizon.
    """
    init = np.asarray(init, dtype=complex)
    if len(init) != model.n_qubits:
        raise ParameterError("init must supply one amplitude per qubit")
    norm = np.vdot(init, init).real
    if abs(norm - 1.0) > 1e-9:
        raise ParameterError(f"initial state norm {norm} differs from 1")
    for attempt in range(max_retries + 1):
        result = _rk4_run(model, init, t_max, dt, max_samples)
        if result.norm_drift <= norm_tol:
            return result
        dt /= 2.0
    raise IntegratorError(
        f"norm drift {result.norm_drift:.3e} exceeds {norm_tol} at dt={result.dt}"
    )


@dataclass(frozen=True)
class UnequalVelocityResult:
    taus: np.ndarray
    concurrence: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    norm_drift: float


def unequal_velocity_run(
    model: DiscreteModeModel, init, t_max: float, dt: float, **kwargs
) -> UnequalVelocityResult:
    """Concurrence of two qubits with (possibly) different velocities.

    No closed form exists for beta_1 != beta_2; the output is checked only
    for norm conservation and concurrence bounds."""
    if model.n_qubits != 2:
        raise ParameterError("unequal-velocity runs are defined for two qubits")
    sim = discrete_mode_simulate(model, init, t_max, dt, **kwargs)
    c1, c2 = sim.qubit_amps
    return UnequalVelocityResult(
        taus=sim.taus,
        concurrence=closed_form_concurrence(c1, c2),
        c1=c1,
        c2=c2,
        norm_drift=sim.norm_drift,
    )
