"""Segment geometry, the inverse Joukowski map, and the admissible pole
regions H(r) that govern convergence of frequency-target designs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# points closer to [-1,1] than this are treated as lying on the segment
ON_SEGMENT_TOL = 1e-12


class DegeneratePointError(ValueError):
    """Point lies on (or numerically on) the segment [-1,1]."""


def segment_distance(z) -> float:
    """min over lambda in [-1,1] of |lambda - z|.

    Equals |Im z| when Re z is inside [-1,1], otherwise the distance to the
    nearer endpoint.
    """
    z = complex(z)
    x = z.real
    if -1.0 <= x <= 1.0:
        return abs(z.imag)
    return abs(z - (1.0 if x > 1.0 else -1.0))


def joukowski_radius(z0) -> float:
    """Radius R = |zeta0| > 1 with z0 = (zeta0 + 1/zeta0)/2.

    The two candidates z0 +/- sqrt(z0**2 - 1) are reciprocal; the one with
    larger modulus is the exterior preimage, so no branch-cut bookkeeping is
    needed.
    """
    z0 = complex(z0)
    if segment_distance(z0) <= ON_SEGMENT_TOL:
        raise DegeneratePointError(f"{z0} lies on [-1,1]; R would equal 1")
    w = np.sqrt(complex(z0 * z0 - 1.0))
    return float(max(abs(z0 + w), abs(z0 - w)))


def joukowski_preimage(z0) -> complex:
    """The preimage zeta0 with |zeta0| > 1."""
    z0 = complex(z0)
    if segment_distance(z0) <= ON_SEGMENT_TOL:
        raise DegeneratePointError(f"{z0} lies on [-1,1]")
    w = complex(np.sqrt(complex(z0 * z0 - 1.0)))
    plus, minus = z0 + w, z0 - w
    return plus if abs(plus) >= abs(minus) else minus


@dataclass(frozen=True)
class RegionSpec:
    """Target point z0 and region parameter r for H(r) membership tests."""

    z0: complex
    r: float
    R: float = field(init=False)

    def __post_init__(self):
        z0 = complex(self.z0)
        if segment_distance(z0) <= ON_SEGMENT_TOL:
            raise DegeneratePointError("z0 must lie off [-1,1]")
        if self.r <= 0:
            raise ValueError("r must be positive")
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "R", joukowski_radius(z0))
        if self.r >= self.R:
            raise ValueError(f"r={self.r} must be < R={self.R}")


def in_region_H(z, spec: RegionSpec) -> bool:
    """Membership in H(r) = H1 union H2 union H3 around spec.z0.

    Boundary points (equality in the defining inequalities) count as inside.
    """
    z = complex(z)
    z0, r = spec.z0, spec.r
    d = abs(z - z0)
    x = z.real
    if x <= -1.0 and d <= r * abs(z + 1.0):
        return True
    if -1.0 <= x <= 1.0 and d <= r * abs(z.imag):
        return True
    if x >= 1.0 and d <= r * abs(z - 1.0):
        return True
    return False
