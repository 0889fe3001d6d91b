"""Discrete probability measures on [-1,1].

Every measure-independence claim in this package is tested against finitely
atomic measures: the worst case over all probability measures is attained by
point masses (and, under n moment constraints, by measures with at most n+1
atoms), so finite atoms suffice and quadrature error never enters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .design import PoleSet, SignalDesign, sup_deviation
from .geometry import ON_SEGMENT_TOL, segment_distance

MASS_TOL = 1e-12


class MeasureError(ValueError):
    """Invalid atoms/weights or evaluation at a point of [-1,1]."""


@dataclass(frozen=True)
class DiscreteMeasure:
    """Atoms in [-1,1] with nonnegative weights summing to 1."""

    atoms: tuple
    weights: tuple

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if atoms.size != weights.size or atoms.size == 0:
            raise MeasureError("atoms and weights must be nonempty and matched")
        if np.any(weights < 0):
            raise MeasureError("weights must be nonnegative")
        if abs(weights.sum() - 1.0) > MASS_TOL:
            raise MeasureError(f"weights sum to {weights.sum()}, not 1")
        if np.any(atoms < -1.0) or np.any(atoms > 1.0):
            raise MeasureError("atoms must lie in [-1,1]")
        # canonical form: strictly increasing atoms, duplicates merged
        order = np.argsort(atoms)
        atoms, weights = atoms[order], weights[order]
        uniq, inverse = np.unique(atoms, return_inverse=True)
        merged = np.zeros_like(uniq)
        np.add.at(merged, inverse, weights)
        object.__setattr__(self, "atoms", tuple(uniq.tolist()))
        object.__setattr__(self, "weights", tuple(merged.tolist()))

    @property
    def atom_array(self) -> np.ndarray:
        return np.asarray(self.atoms, dtype=float)

    @property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def to_json(self) -> dict:
        return {"atoms": list(self.atoms), "weights": list(self.weights)}

    @classmethod
    def from_json(cls, obj: dict) -> "DiscreteMeasure":
        return cls(atoms=tuple(obj["atoms"]), weights=tuple(obj["weights"]))

    @classmethod
    def point_mass(cls, lam: float) -> "DiscreteMeasure":
        return cls(atoms=(lam,), weights=(1.0,))


def markov_eval(mu: DiscreteMeasure, z) -> complex:
    """F_mu(z) = sum_j w_j / (lambda_j - z) for z off [-1,1]."""
    z = complex(z)
    if segment_distance(z) <= ON_SEGMENT_TOL:
        raise MeasureError(f"z = {z} lies on the support interval")
    return complex(np.sum(mu.weight_array / (mu.atom_array - z)))


def moments(mu: DiscreteMeasure, n: int) -> np.ndarray:
    """Moments M_0..M_n; M_0 = 1 always."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    powers = mu.atom_array[None, :] ** np.arange(n + 1)[:, None]
    return powers @ mu.weight_array


def worst_case_point_mass(design: SignalDesign, poles: PoleSet | None = None):
    """The point mass attaining the sup deviation.

    Returns (lambda_star, deviation); matches verify_sup by sharing its
    grid-plus-refinement scan.
    """
    lam_star, value = sup_deviation(design)
    return lam_star, value


def random_measure_with_moments(m1: float, atom_count: int, seed: int,
                                atoms=None) -> DiscreteMeasure:
    """Deterministic pseudo-random measure with first moment m1.

    Samples atoms (unless given), then projects a random positive weight
    vector onto the affine set {sum w = 1, sum w*lambda = m1}; resamples on
    negativity, at most 100 times.
    """
    if not -1.0 < m1 < 1.0:
        raise MeasureError(f"first moment {m1} must lie strictly inside (-1,1)")
    if atom_count < 2:
        raise MeasureError("need at least 2 atoms")
    rng = np.random.default_rng(seed)
    fixed = None if atoms is None else np.asarray(atoms, dtype=float)
    for _ in range(100):
        lam = rng.uniform(-1.0, 1.0, size=atom_count) if fixed is None else fixed
        if lam.min() >= m1 or lam.max() <= m1:
            if fixed is not None:
                raise MeasureError("prescribed atoms cannot reach the moment")
            continue
        w0 = rng.uniform(0.1, 1.0, size=atom_count)
        w0 /= w0.sum()
        a = np.vstack([np.ones(atom_count), lam])
        b = np.array([1.0, m1])
        w = w0 + a.T @ np.linalg.solve(a @ a.T, b - a @ w0)
        if np.all(w >= 0):
            w /= w.sum()
            # re-touch the first moment after the mass renormalization
            w = w + a.T @ np.linalg.solve(a @ a.T, b - a @ w)
            if np.all(w >= 0):
                return DiscreteMeasure(atoms=tuple(lam), weights=tuple(w))
    raise MeasureError(f"could not realize M1 = {m1} after 100 attempts")
