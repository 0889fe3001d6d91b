"""Complex polynomial algebra and Chebyshev evaluation.

Coefficients live in the monomial basis, ascending order (index j is the
coefficient of lambda**j). Degrees are capped at 64: product expansion and
Euclidean division in the monomial basis degrade beyond that, and every
construction in this package uses small degrees anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from numpy.polynomial import polynomial as nppoly

DEGREE_CAP = 64

# coefficient comparison: relative 1e-10 with absolute floor 1e-14
COEFF_RTOL = 1e-10
COEFF_ATOL = 1e-14


class DegreeLimitError(ValueError):
    """Requested degree exceeds the conditioning cap of 64."""


def _trim(coeffs: np.ndarray) -> np.ndarray:
    """Drop trailing zeros, keeping at least the constant term."""
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        return coeffs[:1]
    return coeffs[: nz[-1] + 1]


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial with complex coefficients in the monomial basis."""

    coeffs: tuple

    def __post_init__(self):
        arr = _trim(np.asarray(self.coeffs, dtype=complex))
        if arr.size - 1 > DEGREE_CAP:
            raise DegreeLimitError(f"degree {arr.size - 1} exceeds cap {DEGREE_CAP}")
        object.__setattr__(self, "coeffs", tuple(arr.tolist()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    @property
    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        return abs(lead - 1.0) <= 1e-12 * max(1.0, abs(lead))

    def __call__(self, z):
        return poly_eval(self, z)

    def derivative(self) -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(nppoly.polyder(self.array)))

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(nppoly.polymul(self.array, other.array)))

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(nppoly.polyadd(self.array, other.array)))

    def __sub__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(nppoly.polysub(self.array, other.array)))

    def scale(self, factor: complex) -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(self.array * factor))


def coeffs_close(a: ComplexPolynomial, b: ComplexPolynomial) -> bool:
    """Coefficient-wise comparison at the package-wide tolerance."""
    n = max(len(a.coeffs), len(b.coeffs))
    ca = np.zeros(n, dtype=complex)
    cb = np.zeros(n, dtype=complex)
    ca[: len(a.coeffs)] = a.coeffs
    cb[: len(b.coeffs)] = b.coeffs
    scale = max(np.max(np.abs(ca)), np.max(np.abs(cb)), 1.0)
    return bool(np.all(np.abs(ca - cb) <= COEFF_RTOL * scale + COEFF_ATOL))


def cheb_eval(m: int, z) -> complex:
    """T_m(z) by the three-term recurrence T_{k+1} = 2 z T_k - T_{k-1}.

    Works uniformly for real and complex arguments; stable for m <= 64
    and moderate |z|.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m > DEGREE_CAP:
        raise DegreeLimitError(f"degree {m} exceeds cap {DEGREE_CAP}")
    z = np.asarray(z, dtype=complex)
    t_prev = np.ones_like(z)
    if m == 0:
        return t_prev[()] if z.ndim == 0 else t_prev
    t_cur = z.copy()
    for _ in range(m - 1):
        t_prev, t_cur = t_cur, 2.0 * z * t_cur - t_prev
    return t_cur[()] if z.ndim == 0 else t_cur


def cheb_eval_deriv(m: int, z) -> complex:
    """dT_m/dz, computed as m * U_{m-1}(z) with the Chebyshev-U recurrence."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m > DEGREE_CAP:
        raise DegreeLimitError(f"degree {m} exceeds cap {DEGREE_CAP}")
    z = np.asarray(z, dtype=complex)
    if m == 0:
        out = np.zeros_like(z)
        return out[()] if z.ndim == 0 else out
    # U_0 = 1, U_1 = 2z, U_{k+1} = 2 z U_k - U_{k-1}
    u_prev = np.ones_like(z)
    if m == 1:
        out = m * u_prev
        return out[()] if z.ndim == 0 else out
    u_cur = 2.0 * z
    for _ in range(m - 2):
        u_prev, u_cur = u_cur, 2.0 * z * u_cur - u_prev
    out = m * u_cur
    return out[()] if z.ndim == 0 else out


def monic_from_roots(roots) -> ComplexPolynomial:
    """Monic polynomial prod (lambda - z_j) expanded to monomial coefficients."""
    roots = list(roots)
    if not roots:
        raise ValueError("roots list must be nonempty")
    if len(roots) > DEGREE_CAP:
        raise DegreeLimitError(f"{len(roots)} roots exceed degree cap {DEGREE_CAP}")
    coeffs = nppoly.polyfromroots(np.asarray(roots, dtype=complex))
    return ComplexPolynomial(tuple(coeffs))


def poly_eval(p: ComplexPolynomial, z):
    """Horner evaluation of p at z (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    out = nppoly.polyval(z, p.array)
    return out[()] if z.ndim == 0 else out


def poly_divmod(a: ComplexPolynomial, b: ComplexPolynomial):
    """Euclidean division a = b*quotient + remainder, deg(remainder) < deg(b)."""
    if b.degree < 1:
        raise ValueError("divisor must have degree >= 1")
    if b.coeffs[-1] == 0:
        raise ZeroDivisionError("divisor has zero leading coefficient")
    quo, rem = nppoly.polydiv(a.array, b.array)
    return ComplexPolynomial(tuple(quo)), ComplexPolynomial(tuple(rem))


def monic_cheb(m: int) -> ComplexPolynomial:
    """T_m(lambda)/2**(m-1): the monic degree-m polynomial of minimal sup-norm
    on [-1,1] (norm 1/2**(m-1))."""
    if m < 1:
        raise ValueError("monic normalization by 2**(m-1) requires m >= 1")
    if m > DEGREE_CAP:
        raise DegreeLimitError(f"degree {m} exceeds cap {DEGREE_CAP}")
    basis = np.zeros(m + 1)
    basis[m] = 1.0
    coeffs = npcheb.cheb2poly(basis) / 2.0 ** (m - 1)
    return ComplexPolynomial(tuple(coeffs.astype(complex)))


def cheb_poly(m: int) -> ComplexPolynomial:
    """T_m expanded in the monomial basis (un-normalized)."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m > DEGREE_CAP:
        raise DegreeLimitError(f"degree {m} exceeds cap {DEGREE_CAP}")
    basis = np.zeros(m + 1)
    basis[m] = 1.0
    return ComplexPolynomial(tuple(npcheb.cheb2poly(basis).astype(complex)))
