"""Shared physics core: environment/motion/coupling parameters, the memory
kernel of a lossy cavity, the complex cubic characteristic equation, and the
closed-form survival amplitude of the superradiant state.

All times are the dimensionless tau = lambda * t.  The cavity loss rate
lambda is the time unit of everything downstream; physics enters only through
the ratios omega0/lambda and R.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

# Classical-motion validity bound on the velocity ratio v/c.
BETA_LIMIT = 1e-3

# Relative pairwise root separation below which the residue formula is refused.
DEGENERACY_FLOOR = 1e-8


class ParameterError(ValueError):
    """A physical parameter or argument violates its contract."""


class StateError(ValueError):
    """A quantum state (amplitudes or density matrix) violates its contract."""


class DegenerateRootsError(ArithmeticError):
    """Cubic roots are too close for the residue formula; callers should fall
    back to the Volterra solver."""


class NumericError(ArithmeticError):
    """A numerical routine produced or received a non-finite value."""


class IntegratorError(ArithmeticError):
    """A time integrator failed to meet its conservation contract."""


@dataclass(frozen=True)
class EnvironmentParams:
    """Lossy-cavity (Lorentzian) environment description.

    lam      -- spectral width / cavity loss rate (inverse time; the time unit)
    omega0   -- qubit transition frequency (same inverse-time unit)
    W        -- reservoir coupling strength (same inverse-time unit)
    R        -- dimensionless coupling ratio alpha_T * W / lam
    alpha_T  -- optional collective coupling; when given, R is cross-checked
    """

    lam: float
    omega0: float
    W: float
    R: float
    alpha_T: float | None = None

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ParameterError(f"lam must be positive, got {self.lam}")
        if self.W < 0:
            raise ParameterError(f"W must be non-negative, got {self.W}")
        if self.omega0 < 0:
            raise ParameterError(f"omega0 must be non-negative, got {self.omega0}")
        if self.R < 0:
            raise ParameterError(f"R must be non-negative, got {self.R}")
        if self.alpha_T is not None:
            expected = self.alpha_T * self.W / self.lam
            if abs(self.R - expected) > 1e-12 * max(1.0, abs(expected)):
                raise ParameterError(
                    f"inconsistent R: got {self.R}, alpha_T*W/lam = {expected}"
                )

    @property
    def omega0_ratio(self) -> float:
        return self.omega0 / self.lam

    @classmethod
    def from_ratios(cls, R: float, omega0_ratio: float) -> "EnvironmentParams":
        """Build from the two ratios that actually drive the dynamics."""
        return cls(lam=1.0, omega0=omega0_ratio, W=R, R=R, alpha_T=1.0)


@dataclass(frozen=True)
class MotionProfile:
    """Per-qubit velocity ratios beta_i = v_i/c and the cavity transit scale
    Gamma = L/c (the latter is used only by the discrete-mode oracle)."""

    betas: tuple[float, ...]
    gamma_transit: float = math.inf

    def __post_init__(self) -> None:
        for b in self.betas:
            if not 0 <= b < BETA_LIMIT:
                raise ParameterError(
                    f"velocity ratio {b} outside [0, {BETA_LIMIT}) validity range"
                )
        if not self.gamma_transit > 0:
            raise ParameterError("gamma_transit must be positive")

    @property
    def equal_velocities(self) -> bool:
        return len(set(self.betas)) <= 1

    def common_beta(self) -> float:
        """The shared velocity ratio; every closed-form path requires it."""
        if not self.equal_velocities:
            raise ParameterError(
                f"closed form requires equal velocities, got {self.betas}"
            )
        return self.betas[0] if self.betas else 0.0


@dataclass(frozen=True)
class CouplingProfile:
    """Collective coupling alpha_T and relative strengths r_j (sum r_j^2 = 1)."""

    alpha_T: float
    r: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.alpha_T <= 0:
            raise ParameterError("alpha_T must be positive")
        norm = sum(rj * rj for rj in self.r)
        if abs(norm - 1.0) > 1e-12:
            raise ParameterError(f"relative strengths must satisfy sum r^2 = 1, got {norm}")

    @classmethod
    def from_r1(cls, r1: float, alpha_T: float = 1.0) -> "CouplingProfile":
        if not 0 <= r1 <= 1:
            raise ParameterError(f"r1 must lie in [0, 1], got {r1}")
        return cls(alpha_T=alpha_T, r=(r1, math.sqrt(max(0.0, 1.0 - r1 * r1))))

    @classmethod
    def symmetric(cls, n: int, alpha_T: float = 1.0) -> "CouplingProfile":
        if n < 1:
            raise ParameterError("need at least one qubit")
        return cls(alpha_T=alpha_T, r=(1.0 / math.sqrt(n),) * n)


def velocity_factor(env: EnvironmentParams, beta: float) -> complex:
    """b = beta * (1 + i omega0/lambda), the motion parameter of the kernel."""
    return beta * (1.0 + 1j * env.omega0_ratio)


def y_plus_minus(env: EnvironmentParams, beta: float) -> tuple[complex, complex]:
    b = velocity_factor(env, beta)
    return 1.0 + b, 1.0 - b


def correlation_kernel(tau_diff, env: EnvironmentParams, beta: float):
    """Two-time reservoir correlation in scaled units:
    (W^2/2) exp(-dtau) cosh[beta (1 + i omega0/lambda) dtau].

    Accepts a scalar or array of non-negative time differences.
    """
    tau = np.asarray(tau_diff, dtype=float)
    if np.any(tau < 0):
        raise ParameterError("tau_diff must be non-negative")
    b = velocity_factor(env, beta)
    val = 0.5 * env.W**2 * np.exp(-tau) * np.cosh(b * tau)
    return complex(val) if np.isscalar(tau_diff) else val


@dataclass(frozen=True)
class CubicRoots:
    """Roots of q^3 + 2q^2 + (y+ y- + c)q + c = 0, sorted by descending real
    part (ties by imaginary part)."""

    q1: complex
    q2: complex
    q3: complex
    min_separation: float

    @property
    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.q1, self.q2, self.q3)


def _cubic_eval(q: complex, b: complex, c: complex, d: complex) -> complex:
    return ((q + b) * q + c) * q + d


def _cardano(b: complex, c: complex, d: complex) -> list[complex]:
    """Closed-form roots of the monic complex cubic q^3 + b q^2 + c q + d."""
    p = c - b * b / 3.0
    qq = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    s = cmath.sqrt((qq / 2.0) ** 2 + (p / 3.0) ** 3)
    u3 = -qq / 2.0 + s
    alt = -qq / 2.0 - s
    if abs(alt) > abs(u3):  # avoid cancellation in the cube-root argument
        u3 = alt
    shift = b / 3.0
    if u3 == 0:
        # q = 0 and p = 0: triple root of the depressed cubic.
        return [-shift] * 3
    u = u3 ** (1.0 / 3.0)
    omega = complex(-0.5, math.sqrt(3.0) / 2.0)
    out = []
    for _ in range(3):
        out.append(u - p / (3.0 * u) - shift)
        u *= omega
    return out


def _polish(q: complex, b: complex, c: complex, d: complex) -> complex:
    for _ in range(2):
        deriv = (3.0 * q + 2.0 * b) * q + c
        if deriv == 0:
            break
        q = q - _cubic_eval(q, b, c, d) / deriv
    return q


def solve_cubic(env: EnvironmentParams, beta: float, effective_R2: float) -> CubicRoots:
    """Roots of the characteristic cubic with R^2 replaced by effective_R2.

    Cardano plus a short Newton polish; falls back to the companion-matrix
    eigenvalues if a residual fails its tolerance.
    """
    if effective_R2 < 0:
        raise ParameterError(f"effective_R2 must be non-negative, got {effective_R2}")
    yp, ym = y_plus_minus(env, beta)
    b = 2.0 + 0j
    c = yp * ym + 0.5 * effective_R2
    d = 0.5 * effective_R2 + 0j

    roots = [_polish(q, b, c, d) for q in _cardano(b, c, d)]
    if any(
        abs(_cubic_eval(q, b, c, d)) > 1e-10 * (1.0 + abs(q) ** 3) for q in roots
    ):
        roots = [_polish(q, b, c, d) for q in np.roots([1.0, b, c, d])]

    roots.sort(key=lambda q: (-q.real, q.imag))
    min_sep = min(abs(x - y) for x, y in combinations(roots, 2))
    return CubicRoots(roots[0], roots[1], roots[2], min_sep)


@dataclass(frozen=True)
class SurvivalAmplitude:
    """Evaluator of the superradiant survival amplitude E(tau).

    E(tau) = sum_i A_i exp(q_i tau) with residues
    A_i = (q_i + y+)(q_i + y-) / prod_{j != i} (q_i - q_j).

    roots is None for the uncoupled case, where E is identically 1.
    """

    roots: CubicRoots | None
    residues: tuple[complex, complex, complex]
    y_plus: complex
    y_minus: complex

    @property
    def is_trivial(self) -> bool:
        return self.roots is None

    def __call__(self, tau):
        t = np.asarray(tau, dtype=float)
        if np.any(t < 0):
            raise ParameterError("tau must be non-negative")
        if self.roots is None:
            out = np.ones_like(t, dtype=complex)
        else:
            out = np.zeros_like(t, dtype=complex)
            for a, q in zip(self.residues, self.roots.as_tuple):
                out += a * np.exp(q * t)
        return complex(out) if np.isscalar(tau) else out

    def stationary_time(self, log_drop: float = 18.0) -> float:
        """Time at which |E| has decayed by ~exp(-log_drop); inf if E never decays."""
        if self.roots is None:
            return math.inf
        slowest = max(q.real for q in self.roots.as_tuple)
        if slowest >= 0:
            return math.inf
        return log_drop / -slowest


def survival_amplitude(
    roots: CubicRoots, y_plus: complex, y_minus: complex
) -> SurvivalAmplitude:
    """Build the closed-form evaluator from well-separated roots."""
    qs = roots.as_tuple
    scale = max(1.0, max(abs(q) for q in qs))
    if roots.min_separation <= DEGENERACY_FLOOR * scale:
        raise DegenerateRootsError(
            f"root separation {roots.min_separation:.3e} too small for the "
            "residue formula; use the Volterra solver"
        )
    residues = []
    for i, qi in enumerate(qs):
        denom = 1.0 + 0j
        for j, qj in enumerate(qs):
            if j != i:
                denom *= qi - qj
        residues.append((qi + y_plus) * (qi + y_minus) / denom)
    # E(0) = 1 and dE/dtau(0) = 0 are exact identities of the partial
    # fractions; a gross violation signals a near-degenerate configuration.
    if abs(sum(residues) - 1.0) > 1e-6 or abs(
        sum(a * q for a, q in zip(residues, qs))
    ) > 1e-6 * scale:
        raise DegenerateRootsError("residue identities violated; roots unreliable")
    return SurvivalAmplitude(roots, tuple(residues), y_plus, y_minus)


def build_survival(
    env: EnvironmentParams, beta: float, effective_R2: float
) -> SurvivalAmplitude:
    """Survival amplitude for a given effective coupling strength.

    effective_R2 = 0 short-circuits to E(tau) = 1: the residue formula is
    singular there but the physics is trivial.
    """
    yp, ym = y_plus_minus(env, beta)
    if effective_R2 == 0:
        return SurvivalAmplitude(None, (1.0 + 0j, 0j, 0j), yp, ym)
    return survival_amplitude(solve_cubic(env, beta, effective_R2), yp, ym)
