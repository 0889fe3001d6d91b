"""Time-domain layer: system models, signal synthesis, response simulation,
and rigorous moment-constrained bounds on Re[e^{i theta} v(t)].

A system maps each drive frequency omega to a point z(omega) off [-1,1] and
an amplitude factor c(omega); the response to the multi-frequency input
u(t) = sum beta_k exp(-i omega_k (t - t0)) is
v(t) = a0 sum alpha_k F_mu(z(omega_k)) exp(-i omega_k (t - t0)) with
alpha_k = beta_k c(omega_k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .design import SignalDesign
from .geometry import segment_distance
from .measure import DiscreteMeasure, markov_eval


class SingularFrequencyError(ValueError):
    """Built-in model evaluated at a singular frequency (omega = 0)."""


class InfeasibleMomentsError(ValueError):
    """Prescribed moments admit no probability measure on [-1,1]."""


@dataclass(frozen=True)
class MaxwellPhase:
    """Spring G and dashpot eta in series; eta = None means purely elastic."""

    G: float
    eta: Optional[float] = None

    def __post_init__(self):
        if self.G <= 0:
            raise ValueError("shear modulus G must be positive")
        if self.eta is not None and self.eta <= 0:
            raise ValueError("viscosity eta must be positive (or None for elastic)")

    @property
    def elastic(self) -> bool:
        return self.eta is None

    def modulus(self, omega) -> complex:
        """Complex shear modulus under the exp(-i omega t) convention."""
        if self.elastic:
            return complex(self.G)
        omega = complex(omega)
        return 1j * omega * self.eta * self.G / (self.G + 1j * omega * self.eta)


@dataclass(frozen=True)
class SystemModel:
    """Frequency maps omega -> z(omega), omega -> c(omega) and the scale a0."""

    kind: str
    z_fn: Callable[[complex], complex]
    c_fn: Callable[[complex], complex]
    a0: float = 1.0

    def __post_init__(self):
        if self.a0 <= 0:
            raise ValueError("a0 must be positive")

    @classmethod
    def lossy_dielectric(cls, a0: float = 1.0) -> "SystemModel":
        return cls("lossy_dielectric", lambda w: 2.0 + 1j / w, lambda w: 1.0 + 0j, a0)

    @classmethod
    def plasma(cls, a0: float = 1.0) -> "SystemModel":
        return cls("plasma", lambda w: 2.0 - 2.0 / w ** 2, lambda w: 1.0 + 0j, a0)

    @classmethod
    def two_phase(cls, phase1: MaxwellPhase, phase2: MaxwellPhase,
                  a0: float = 1.0) -> "SystemModel":
        def z_fn(w):
            c1, c2 = phase1.modulus(w), phase2.modulus(w)
            return (c1 + c2) / (c1 - c2)

        return cls("two_phase", z_fn, phase2.modulus, a0)

    @classmethod
    def custom(cls, z_fn, c_fn=None, a0: float = 1.0) -> "SystemModel":
        return cls("custom", z_fn, c_fn or (lambda w: 1.0 + 0j), a0)


def model_z(model: SystemModel, omega) -> complex:
    """z(omega), guarding the built-in maps against omega = 0."""
    omega = complex(omega)
    if model.kind != "custom" and omega == 0:
        raise SingularFrequencyError("built-in maps are singular at omega = 0")
    return complex(model.z_fn(omega))


def model_c(model: SystemModel, omega) -> complex:
    omega = complex(omega)
    if model.kind != "custom" and omega == 0:
        raise SingularFrequencyError("built-in maps are singular at omega = 0")
    return complex(model.c_fn(omega))


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    steps: int
    t0: float = 0.0

    def __post_init__(self):
        if self.t_start >= self.t_end:
            raise ValueError("t_start must be < t_end")
        if self.steps < 2:
            raise ValueError("need at least 2 time steps")
        if not self.t_start <= self.t0 <= self.t_end:
            raise ValueError("t0 must lie inside the grid")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.steps)


def _phases(omegas: np.ndarray, times: np.ndarray, t0: float) -> np.ndarray:
    """exp(-i omega_k (t - t0)) as a (len(omegas), len(times)) array."""
    return np.exp(-1j * omegas[:, None] * (times[None, :] - t0))


def synthesize_input(design: SignalDesign, model: SystemModel,
                     omegas: Sequence[complex], grid: TimeGrid) -> np.ndarray:
    """u(t) = sum_k (alpha_k / c(omega_k)) exp(-i omega_k (t - t0))."""
    omegas = np.asarray(omegas, dtype=complex)
    if omegas.size != design.poles.m:
        raise ValueError("need one frequency per design pole")
    cvals = np.array([model_c(model, w) for w in omegas])
    if np.any(np.abs(cvals) == 0):
        raise ValueError("c(omega_k) = 0: the input amplitude is undefined")
    betas = design.alphas / cvals
    return betas @ _phases(omegas, grid.times, grid.t0)


def simulate_response(design: SignalDesign, model: SystemModel,
                      omegas: Sequence[complex], mu: DiscreteMeasure,
                      grid: TimeGrid) -> np.ndarray:
    """v(t) = a0 sum_k alpha_k F_mu(z(omega_k)) exp(-i omega_k (t - t0))."""
    omegas = np.asarray(omegas, dtype=complex)
    if omegas.size != design.poles.m:
        raise ValueError("need one frequency per design pole")
    fvals = np.array([markov_eval(mu, model_z(model, w)) for w in omegas])
    return model.a0 * (design.alphas * fvals) @ _phases(omegas, grid.times, grid.t0)


def single_frequency_response(model: SystemModel, omega0: complex,
                              mu: DiscreteMeasure, grid: TimeGrid) -> np.ndarray:
    """Response a0 F_mu(z(omega0)) exp(-i omega0 (t - t0)) to the unit-amplitude
    single-frequency input u0(t) = exp(-i omega0 (t - t0))/c(omega0)."""
    f0 = markov_eval(mu, model_z(model, omega0))
    return model.a0 * f0 * np.exp(-1j * complex(omega0) * (grid.times - grid.t0))


def crest_ratio(alphas: Sequence[complex], model: SystemModel,
                omegas: Sequence[complex], grid: TimeGrid,
                reference_mu: DiscreteMeasure,
                real_part_only: bool = False) -> float:
    """max over grid times t <= t0 of |v(t)| / |v(t0)| for a reference measure.

    With real_part_only the ratio is taken on Re[v] instead (conjugate-paired
    designs).
    """
    alphas = np.asarray(alphas, dtype=complex)
    omegas = np.asarray(omegas, dtype=complex)
    fvals = np.array([markov_eval(reference_mu, model_z(model, w)) for w in omegas])
    times = grid.times
    mask = times <= grid.t0
    if not np.any(mask):
        raise ValueError("grid must cover t <= t0")
    series = (alphas * fvals) @ _phases(omegas, times[mask], grid.t0)
    at_t0 = complex((alphas * fvals) @ np.ones(omegas.size))
    if real_part_only:
        denom = abs(at_t0.real)
        values = np.abs(series.real)
    else:
        denom = abs(at_t0)
        values = np.abs(series)
    if denom == 0:
        raise ZeroDivisionError("response vanishes at t0")
    return float(values.max() / denom)


def _check_moment_feasibility(known_moments: Sequence[float]):
    n = len(known_moments)
    if n > 2:
        raise InfeasibleMomentsError("at most two moments (M1, M2) are supported")
    if n >= 1 and abs(known_moments[0]) > 1.0:
        raise InfeasibleMomentsError(f"|M1| = {abs(known_moments[0])} exceeds 1")
    if n == 2:
        m1, m2 = known_moments
        if not m1 ** 2 - 1e-12 <= m2 <= 1.0 + 1e-12:
            raise InfeasibleMomentsError(f"M2 = {m2} violates M1^2 <= M2 <= 1")


def response_bounds(design: SignalDesign, model: SystemModel,
                    omegas: Sequence[complex], known_moments: Sequence[float],
                    theta: float, grid: TimeGrid,
                    atom_grid_size: int = 2049):
    """Pointwise-in-time bounds on Re[e^{i theta} v(t)] over all probability
    measures with the prescribed moments.

    For each t the integrand g_t(lambda) is linear in the measure, so the
    extremum is attained by measures supported on few atoms; here the measure
    is optimized over a dense atom grid by linear programming (M2, when
    prescribed, is relaxed by the grid's mean-preserving split tolerance) and
    the result is rounded outward by an interpolation-error estimate, so the
    reported interval encloses every admissible measure, on or off the grid.

    Returns (lower, upper) arrays aligned with grid.times, including the a0
    scale.
    """
    _check_moment_feasibility(known_moments)
    n = len(known_moments)
    omegas = np.asarray(omegas, dtype=complex)
    zvals = np.array([model_z(model, w) for w in omegas])
    lam = np.linspace(-1.0, 1.0, atom_grid_size)
    h = lam[1] - lam[0]
    dists = np.array([segment_distance(z) for z in zvals])

    a_eq = [np.ones_like(lam)]
    b_eq = [1.0]
    if n >= 1:
        a_eq.append(lam)
        b_eq.append(float(known_moments[0]))
    a_ub = b_ub = None
    if n == 2:
        # mean-preserving splits perturb lambda**2 by at most h**2/4
        m2 = float(known_moments[1])
        slack = h ** 2 / 4.0
        a_ub = np.vstack([lam ** 2, -lam ** 2])
        b_ub = np.array([m2 + slack, -(m2 - slack)])
    a_eq = np.vstack(a_eq)
    b_eq = np.array(b_eq)

    times = grid.times
    lower = np.empty_like(times)
    upper = np.empty_like(times)
    for i, t in enumerate(times):
        coeffs = design.alphas * np.exp(1j * theta) * np.exp(-1j * omegas * (t - grid.t0))
        g = np.sum((coeffs[:, None] / (lam[None, :] - zvals[:, None])).real, axis=0)
        # outward rounding: quadratic interpolation error of g on one cell
        curvature = 2.0 * np.sum(np.abs(coeffs) / dists ** 3)
        pad = curvature * h ** 2 / 8.0
        if n == 0:
            lo, hi = float(g.min()), float(g.max())
        else:
            res_lo = linprog(g, A_eq=a_eq, b_eq=b_eq, A_ub=a_ub, b_ub=b_ub,
                             bounds=(0, None), method="highs")
            res_hi = linprog(-g, A_eq=a_eq, b_eq=b_eq, A_ub=a_ub, b_ub=b_ub,
                             bounds=(0, None), method="highs")
            if not (res_lo.success and res_hi.success):
                raise InfeasibleMomentsError("moment constraints infeasible on the atom grid")
            lo, hi = float(res_lo.fun), float(-res_hi.fun)
        lower[i] = model.a0 * (lo - pad)
        upper[i] = model.a0 * (hi + pad)
    return lower, upper
