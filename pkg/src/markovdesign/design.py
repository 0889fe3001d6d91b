"""Coefficient constructions for measure-independent signal design.

Given m points z_1..z_m off [-1,1], every design here produces residues
alpha_k such that the rational function sum alpha_k/(lambda - z_k) tracks a
target on [-1,1] -- the constant 1, a low-degree polynomial (when moments of
the measure are known), the resolvent kernel 1/(lambda - z0), or its
derivative -- with a certified sup-norm error.  The certified bound
``epsilon`` comes from the closed forms (2/(2 d_min)**m and relatives); the
measured bound ``epsilon_observed`` comes from a dense Chebyshev grid with
golden-section refinement, and is always dominated by the certificate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import ON_SEGMENT_TOL, RegionSpec, in_region_H, segment_distance
from .polynomial import (
    ComplexPolynomial,
    cheb_eval,
    cheb_eval_deriv,
    monic_cheb,
    monic_from_roots,
    poly_divmod,
)

MAX_POLES = 48
SUP_GRID_SIZE = 4096

MODE_UNIT = "unit"
MODE_MOMENTS = "moments"
MODE_FREQUENCY_TARGET = "frequency_target"
MODE_DERIVATIVE_TARGET = "derivative_target"
MODE_ZERO_FACTOR = "zero_factor"


class DesignError(ValueError):
    """Invalid pole configuration or degenerate design request."""


@dataclass(frozen=True)
class PoleSet:
    """The m design points z_1..z_m with cached segment distances."""

    points: tuple
    distances: tuple = field(init=False)
    d_min: float = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        m = pts.size
        if not 1 <= m <= MAX_POLES:
            raise DesignError(f"need between 1 and {MAX_POLES} poles, got {m}")
        dists = np.array([segment_distance(z) for z in pts])
        if np.any(dists <= ON_SEGMENT_TOL):
            bad = int(np.argmin(dists))
            raise DesignError(f"pole {pts[bad]} lies on [-1,1]")
        if m > 1:
            diff = np.abs(pts[:, None] - pts[None, :])
            np.fill_diagonal(diff, np.inf)
            if diff.min() <= 1e-10 * max(np.abs(pts).max(), 1.0):
                raise DesignError("poles must be pairwise distinct")
        object.__setattr__(self, "points", tuple(pts.tolist()))
        object.__setattr__(self, "distances", tuple(dists.tolist()))
        object.__setattr__(self, "d_min", float(dists.min()))

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)

    def q(self) -> ComplexPolynomial:
        """The monic node polynomial prod (lambda - z_j)."""
        return monic_from_roots(self.points)

    def off_diagonal_products(self) -> np.ndarray:
        """prod_{j != k} (z_k - z_j) for each k."""
        pts = self.array
        diff = pts[:, None] - pts[None, :]
        np.fill_diagonal(diff, 1.0)
        return np.prod(diff, axis=1)


@dataclass
class SignalDesign:
    """Residues, optional auxiliary coefficients, and error certificates."""

    mode: str
    poles: PoleSet
    alphas: np.ndarray
    epsilon: float
    gammas: Optional[np.ndarray] = None
    alpha0: Optional[complex] = None
    b_m: Optional[complex] = None
    z0: Optional[complex] = None
    convergent: bool = True
    epsilon_observed: float = float("nan")
    region_diagnostics: Optional[dict] = None

    def rational_eval(self, lam):
        """sum_k alpha_k / (lam - z_k), vectorized over lam."""
        lam = np.asarray(lam, dtype=complex)
        z = self.poles.array
        out = np.sum(self.alphas[:, None] / (lam.reshape(-1)[None, :] - z[:, None]), axis=0)
        return out.reshape(lam.shape) if lam.ndim else out[0]

    def target_eval(self, lam):
        """The function the rational combination approximates on [-1,1]."""
        lam = np.asarray(lam, dtype=complex)
        if self.mode in (MODE_UNIT, MODE_ZERO_FACTOR):
            return np.ones_like(lam)
        if self.mode == MODE_MOMENTS:
            return np.polynomial.polynomial.polyval(lam, self.gammas)
        if self.mode == MODE_FREQUENCY_TARGET:
            return 1.0 / (lam - self.z0)
        if self.mode == MODE_DERIVATIVE_TARGET:
            return 1.0 / (lam - self.z0) ** 2 - self.alpha0 / (lam - self.z0)
        raise ValueError(f"unknown mode {self.mode!r}")

    def deviation(self, lam):
        """|rational - target| evaluated pointwise on real lam."""
        lam = np.asarray(lam, dtype=float)
        return np.abs(self.rational_eval(lam) - self.target_eval(lam))


def _lobatto_grid(n: int) -> np.ndarray:
    """n Chebyshev-Lobatto nodes on [-1,1], ascending, endpoints included."""
    return np.cos(np.pi * np.arange(n - 1, -1, -1) / (n - 1))


def _golden_max(f, a: float, b: float, iters: int = 80):
    """Golden-section maximization of f on [a,b]; returns (x, f(x))."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a < 1e-14:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = c if fc > fd else d
    return x, max(fc, fd)


def _refined_extremum(f, grid: np.ndarray, values: np.ndarray, maximize: bool = True):
    """Grid argmax/argmin refined by golden-section search in the two
    neighboring intervals; returns (x_star, f(x_star))."""
    sign = 1.0 if maximize else -1.0
    idx = int(np.argmax(sign * values))
    best_x, best_v = float(grid[idx]), float(values[idx])
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, grid.size - 1)]
    for a, b in ((lo, grid[idx]), (grid[idx], hi)):
        if b - a <= 0:
            continue
        x, v = _golden_max(lambda t: sign * float(f(t)), float(a), float(b))
        if v > sign * best_v:
            best_x, best_v = x, sign * v
    return best_x, best_v


def sup_deviation(design: SignalDesign, grid_size: int | None = None):
    """Worst deviation |R(lambda) - target(lambda)| on [-1,1].

    Scans a Chebyshev-Lobatto grid, then refines around the argmax with
    golden-section search.  Returns (lambda_star, value).
    """
    grid = _lobatto_grid(grid_size or SUP_GRID_SIZE)
    vals = design.deviation(grid)
    return _refined_extremum(lambda x: design.deviation(np.array([x]))[0], grid, vals)


def verify_sup(design: SignalDesign, poles: Optional[PoleSet] = None,
               grid_size: int | None = None) -> float:
    """Measured sup-norm deviation; stores it in design.epsilon_observed."""
    if poles is not None and poles is not design.poles:
        if not np.allclose(poles.array, design.poles.array):
            raise DesignError("pole set inconsistent with design")
    _, value = sup_deviation(design, grid_size)
    design.epsilon_observed = value
    return value


def _grid_min_abs_q(q: ComplexPolynomial, grid_size: int | None = None) -> float:
    """min over the refined grid of |q(lambda)| on [-1,1]."""
    grid = _lobatto_grid(grid_size or SUP_GRID_SIZE)
    vals = np.abs(q(grid))
    _, v = _refined_extremum(lambda x: abs(q(x)), grid, vals, maximize=False)
    return v


def _check_convergent(poles: PoleSet) -> bool:
    if poles.d_min <= 0.5:
        warnings.warn(
            f"d_min = {poles.d_min:.4g} <= 1/2: the closed-form certificate "
            "does not decay with m (design still produced)",
            stacklevel=3,
        )
        return False
    return True


def design_unit(poles: PoleSet) -> SignalDesign:
    """Residues making sum alpha_k/(lambda - z_k) approximate 1 on [-1,1].

    alpha_k = -T_m(z_k) / (2**(m-1) prod_{j != k}(z_k - z_j)), certified by
    epsilon = 2/(2 d_min)**m.
    """
    m = poles.m
    tvals = np.array([cheb_eval(m, z) for z in poles.points])
    alphas = -tvals / (2.0 ** (m - 1) * poles.off_diagonal_products())
    design = SignalDesign(
        mode=MODE_UNIT,
        poles=poles,
        alphas=alphas,
        epsilon=2.0 / (2.0 * poles.d_min) ** m,
        gammas=np.array([1.0 + 0.0j]),
        convergent=_check_convergent(poles),
    )
    verify_sup(design)
    return design


def design_moments(poles: PoleSet, n: int) -> SignalDesign:
    """Design approximating the moment polynomial sum gamma_l lambda**l.

    Euclidean division of the monic Chebyshev polynomial of degree m+n by the
    node polynomial q gives the (monic, degree-n) moment polynomial as the
    quotient and -p as the remainder.  Certificate: 2/(2**n (2 d_min)**m).
    """
    if n < 0:
        raise DesignError("moment count n must be nonnegative")
    m = poles.m
    if m + n > 64:
        raise DesignError(f"m + n = {m + n} exceeds the degree cap 64")
    q = poles.q()
    quotient, remainder = poly_divmod(monic_cheb(m + n), q)
    p = remainder.scale(-1.0)
    gammas = quotient.array
    gammas = np.pad(gammas, (0, n + 1 - gammas.size))
    gammas[-1] = 1.0  # quotient of two monic polynomials; pin exactly
    alphas = p(poles.array) / poles.off_diagonal_products()
    design = SignalDesign(
        mode=MODE_MOMENTS,
        poles=poles,
        alphas=alphas,
        epsilon=2.0 / (2.0 ** n * (2.0 * poles.d_min) ** m),
        gammas=gammas,
        convergent=_check_convergent(poles),
    )
    verify_sup(design)
    return design


def _validate_target_point(poles: PoleSet, z0: complex) -> complex:
    z0 = complex(z0)
    if segment_distance(z0) <= ON_SEGMENT_TOL:
        raise DesignError("target point z0 must lie off [-1,1]")
    if np.min(np.abs(poles.array - z0)) <= 1e-10 * max(1.0, abs(z0)):
        raise DesignError("target point z0 coincides with a pole")
    return z0


def _region_diagnostics(poles: PoleSet, z0: complex) -> Optional[dict]:
    # conservative r = 1 membership check; diagnostic only
    try:
        spec = RegionSpec(z0=z0, r=1.0)
    except ValueError:
        return None
    return {k: in_region_H(z, spec) for k, z in enumerate(poles.points)}


def design_frequency_target(poles: PoleSet, z0: complex) -> SignalDesign:
    """Design approximating the resolvent kernel 1/(lambda - z0).

    b_m = q(z0)/T_{m-1}(z0) makes q - b_m T_{m-1} divisible by
    (lambda - z0); the residues follow and the certificate is
    |b_m| / (d0 * min |q| on [-1,1]).
    """
    z0 = _validate_target_point(poles, z0)
    m = poles.m
    q = poles.q()
    t_at_z0 = cheb_eval(m - 1, z0)
    if abs(t_at_z0) <= 1e-12:
        raise DesignError(f"T_{m - 1}(z0) vanishes at z0 = {z0}: degenerate target")
    b_m = q(z0) / t_at_z0
    tvals = np.array([cheb_eval(m - 1, z) for z in poles.points])
    alphas = -b_m * tvals / ((poles.array - z0) * poles.off_diagonal_products())
    d0 = segment_distance(z0)
    design = SignalDesign(
        mode=MODE_FREQUENCY_TARGET,
        poles=poles,
        alphas=alphas,
        epsilon=abs(b_m) / (d0 * _grid_min_abs_q(q)),
        b_m=b_m,
        z0=z0,
        region_diagnostics=_region_diagnostics(poles, z0),
    )
    verify_sup(design)
    return design


def design_derivative_target(poles: PoleSet, z0: complex) -> SignalDesign:
    """Design approximating d/dz of the resolvent kernel at z0.

    The double-root construction forces both the value and the derivative of
    q(lambda)[1 - alpha0(lambda - z0)] - b_m T_{m-1}(lambda) to vanish at z0;
    alpha0 is evaluated at z0 accordingly.  The verification target is
    1/(lambda - z0)**2 - alpha0/(lambda - z0) and the certificate is
    |b_m| / (d0**2 * min |q|).
    """
    z0 = _validate_target_point(poles, z0)
    m = poles.m
    q = poles.q()
    t_at_z0 = cheb_eval(m - 1, z0)
    if abs(t_at_z0) <= 1e-12:
        raise DesignError(f"T_{m - 1}(z0) vanishes at z0 = {z0}: degenerate target")
    b_m = q(z0) / t_at_z0
    alpha0 = (q.derivative()(z0) - b_m * cheb_eval_deriv(m - 1, z0)) / q(z0)
    tvals = np.array([cheb_eval(m - 1, z) for z in poles.points])
    alphas = -b_m * tvals / ((poles.array - z0) ** 2 * poles.off_diagonal_products())
    d0 = segment_distance(z0)
    design = SignalDesign(
        mode=MODE_DERIVATIVE_TARGET,
        poles=poles,
        alphas=alphas,
        epsilon=abs(b_m) / (d0 ** 2 * _grid_min_abs_q(q)),
        alpha0=alpha0,
        b_m=b_m,
        z0=z0,
        region_diagnostics=_region_diagnostics(poles, z0),
    )
    verify_sup(design)
    return design


def design_with_zero_factor(poles: PoleSet, s: ComplexPolynomial) -> SignalDesign:
    """Unit design with T_m replaced by s(lambda) T_{m-M}(lambda).

    The prescribed monic factor s (degree M < m) shapes the signal; choosing
    s with a root at a pole drops that frequency entirely.  The certificate
    has no closed form and is computed numerically as
    sup |s T_{m-M}/2**(m-M-1)| / min |q| on the refined grid.
    """
    m = poles.m
    M = s.degree
    if M >= m:
        raise DesignError(f"deg(s) = {M} must be < m = {m}")
    if not s.is_monic:
        raise DesignError("zero-factor polynomial s must be monic")
    scale = 2.0 ** (m - M - 1)
    svals = s(poles.array)
    tvals = np.array([cheb_eval(m - M, z) for z in poles.points])
    alphas = -svals * tvals / (scale * poles.off_diagonal_products())
    q = poles.q()

    def numerator(lam):
        return np.abs(s(lam) * cheb_eval(m - M, np.asarray(lam, dtype=complex))) / scale

    design = SignalDesign(
        mode=MODE_ZERO_FACTOR,
        poles=poles,
        alphas=alphas,
        epsilon=float("nan"),
        gammas=np.array([1.0 + 0.0j]),
        convergent=_check_convergent(poles),
    )
    lam_star, observed = sup_deviation(design)
    design.epsilon_observed = observed
    # numerical certificate: candidates include the deviation argmax so the
    # certificate dominates the observation by construction
    grid = _lobatto_grid(SUP_GRID_SIZE)
    num_x, _ = _refined_extremum(lambda x: float(numerator(x)), grid, numerator(grid))
    den_x, _ = _refined_extremum(lambda x: abs(q(x)), grid, np.abs(q(grid)), maximize=False)
    cands = np.concatenate([grid, [lam_star, num_x, den_x]])
    design.epsilon = float(np.max(numerator(cands)) / np.min(np.abs(q(cands))))
    return design


def stieltjes_coefficients(design: SignalDesign, z0: complex) -> np.ndarray:
    """Coefficients xi_k for the Stieltjes-normalized form of target designs.

    xi_k = alpha_k (1 - z0)/(1 - z_k); in derivative mode the extra
    coefficient xi_0 = alpha0 - 1/(1 - z0) is prepended.
    """
    if design.mode not in (MODE_FREQUENCY_TARGET, MODE_DERIVATIVE_TARGET):
        raise DesignError("stieltjes coefficients require a target-mode design")
    z0 = complex(z0)
    pts = design.poles.array
    if np.min(np.abs(pts - 1.0)) <= 1e-12:
        raise DesignError("a pole coincides with 1: transform undefined")
    xi = design.alphas * (1.0 - z0) / (1.0 - pts)
    if design.mode == MODE_DERIVATIVE_TARGET:
        xi = np.concatenate([[design.alpha0 - 1.0 / (1.0 - z0)], xi])
    return xi
