import numpy as np
import pytest

from markovdesign.design import (
    DesignError,
    PoleSet,
    SignalDesign,
    design_derivative_target,
    design_frequency_target,
    design_moments,
    design_unit,
    design_with_zero_factor,
    stieltjes_coefficients,
    sup_deviation,
    verify_sup,
)
from markovdesign.polynomial import ComplexPolynomial, monic_from_roots, poly_eval

# derived pole set used across the suite: z = 2 + i/omega for
# omega in {1+1i, 0.5+0.3i, 2+0.5i}
DIELECTRIC_POLES = (
    2.5 + 0.5j,
    2.0 + 0.3 / 0.34 + (0.5 / 0.34) * 1j,
    2.0 + 0.5 / 4.25 + (2.0 / 4.25) * 1j,
)
DIELECTRIC_D_MIN = 1.2126781251816647  # distance from the third pole to 1


def random_poles(rng, m, d_min_floor=0.6):
    while True:
        pts = rng.uniform(-2, 4, m) + 1j * rng.uniform(-2, 2, m)
        try:
            poles = PoleSet(points=tuple(pts))
        except DesignError:
            continue
        if poles.d_min >= d_min_floor:
            return poles


class TestPoleSet:
    def test_dielectric_d_min(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        assert poles.d_min == pytest.approx(DIELECTRIC_D_MIN, abs=1e-9)

    def test_distances_order(self):
        poles = PoleSet(points=(2.0 + 1j, 0.0 + 0.25j))
        assert poles.distances == pytest.approx((np.sqrt(2.0), 0.25))
        assert poles.d_min == pytest.approx(0.25)

    def test_pole_on_segment_rejected(self):
        with pytest.raises(DesignError):
            PoleSet(points=(0.5,))

    def test_duplicate_poles_rejected(self):
        with pytest.raises(DesignError):
            PoleSet(points=(2.0 + 1j, 2.0 + 1j))

    def test_nearly_duplicate_poles_rejected(self):
        z = 2.0 + 1j
        with pytest.raises(DesignError):
            PoleSet(points=(z, z + 1e-12))

    def test_too_many_poles_rejected(self):
        pts = 2.0 + 0.6 * np.exp(2j * np.pi * np.arange(49) / 49)
        with pytest.raises(DesignError):
            PoleSet(points=tuple(pts))

    def test_off_diagonal_products(self):
        poles = PoleSet(points=(2.0, 3.0, 2.0 + 1j))
        want = np.array([
            (2.0 - 3.0) * (2.0 - (2 + 1j)),
            (3.0 - 2.0) * (3.0 - (2 + 1j)),
            ((2 + 1j) - 2.0) * ((2 + 1j) - 3.0),
        ])
        assert np.allclose(poles.off_diagonal_products(), want)

    def test_node_polynomial_roots(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        q = poles.q()
        assert q.is_monic
        assert np.allclose(q(poles.array), 0.0, atol=1e-10)


class TestDesignUnit:
    def test_single_pole_at_two(self):
        design = design_unit(PoleSet(points=(2.0,)))
        assert design.alphas[0] == pytest.approx(-2.0, abs=1e-10)
        lam_star, value = sup_deviation(design)
        assert value == pytest.approx(1.0, abs=1e-10)
        assert lam_star == pytest.approx(1.0, abs=1e-8)

    def test_dielectric_certificate(self):
        design = design_unit(PoleSet(points=DIELECTRIC_POLES))
        assert design.epsilon == pytest.approx(2.0 / (2.0 * DIELECTRIC_D_MIN) ** 3, rel=1e-9)
        assert design.epsilon_observed <= design.epsilon + 1e-9
        assert design.convergent

    def test_partial_fractions_reproduce_interpolant(self):
        # sum alpha_k/(lam - z_k) equals (q - monic T_m)/q pointwise
        rng = np.random.default_rng(0)
        poles = random_poles(rng, 4)
        design = design_unit(poles)
        q = poles.q()
        m = poles.m
        from markovdesign.polynomial import monic_cheb
        p = q - monic_cheb(m)
        lam = np.linspace(-1, 1, 101)
        assert np.allclose(design.rational_eval(lam), poly_eval(p, lam) / poly_eval(q, lam),
                           rtol=1e-9, atol=1e-12)

    def test_close_poles_warn_not_error(self):
        with pytest.warns(UserWarning):
            design = design_unit(PoleSet(points=(0.0 + 0.3j,)))
        assert not design.convergent
        assert np.isfinite(design.epsilon)

    def test_observed_below_certificate_randomized(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            m = int(rng.integers(1, 7))
            design = design_unit(random_poles(rng, m))
            assert design.epsilon_observed <= design.epsilon + 1e-9


class TestDesignMoments:
    def test_single_pole_one_moment(self):
        design = design_moments(PoleSet(points=(2.0,)), 1)
        assert design.alphas[0] == pytest.approx(-3.5, abs=1e-10)
        assert np.allclose(design.gammas, [2.0, 1.0], atol=1e-10)
        lam_star, value = sup_deviation(design)
        assert value == pytest.approx(0.5, abs=1e-10)
        assert lam_star == pytest.approx(1.0, abs=1e-8)

    def test_zero_moments_reduces_to_unit(self):
        rng = np.random.default_rng(1)
        poles = random_poles(rng, 5)
        unit = design_unit(poles)
        red = design_moments(poles, 0)
        assert np.allclose(red.alphas, unit.alphas, rtol=1e-9)
        assert red.epsilon == pytest.approx(unit.epsilon, rel=1e-12)
        assert np.allclose(red.gammas, [1.0])

    def test_moment_polynomial_is_monic(self):
        rng = np.random.default_rng(2)
        for n in (1, 2, 3):
            design = design_moments(random_poles(rng, 4), n)
            assert design.gammas.size == n + 1
            assert design.gammas[-1] == 1.0

    def test_certificate_tightens_with_moments(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        eps = [design_moments(poles, n).epsilon for n in range(4)]
        for a, b in zip(eps, eps[1:]):
            assert b == pytest.approx(a / 2.0, rel=1e-12)

    def test_degree_cap(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        with pytest.raises(DesignError):
            design_moments(poles, 62)

    def test_observed_below_certificate(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            design = design_moments(random_poles(rng, int(rng.integers(1, 6))),
                                    int(rng.integers(0, 4)))
            assert design.epsilon_observed <= design.epsilon + 1e-9


class TestFrequencyTarget:
    Z0 = 0.308824 - 0.764706j
    POLES = (Z0 - 0.25j, Z0 - 0.45j, Z0 + 0.2 - 0.35j)

    def test_certificate_holds(self):
        design = design_frequency_target(PoleSet(points=self.POLES), self.Z0)
        assert design.epsilon_observed <= design.epsilon + 1e-9
        assert design.z0 == self.Z0

    def test_interpolation_identity(self):
        # q(lam) - b_m T_{m-1}(lam) must vanish at z0
        design = design_frequency_target(PoleSet(points=self.POLES), self.Z0)
        poles = design.poles
        q = poles.q()
        from markovdesign.polynomial import cheb_eval
        residual = q(self.Z0) - design.b_m * cheb_eval(poles.m - 1, self.Z0)
        assert abs(residual) < 1e-10 * max(1.0, abs(q(self.Z0)))

    def test_z0_on_pole_rejected(self):
        with pytest.raises(DesignError):
            design_frequency_target(PoleSet(points=self.POLES), self.POLES[0])

    def test_z0_on_segment_rejected(self):
        with pytest.raises(DesignError):
            design_frequency_target(PoleSet(points=self.POLES), 0.5)

    def test_region_diagnostics_all_inside(self):
        design = design_frequency_target(PoleSet(points=self.POLES), self.Z0)
        assert design.region_diagnostics is not None
        assert all(design.region_diagnostics.values())


class TestDerivativeTarget:
    Z0 = 2.5 + 0.5j
    POLES = (2.3 + 0.4j, 2.7 + 0.6j, 2.5 + 0.9j)

    def test_certificate_holds(self):
        design = design_derivative_target(PoleSet(points=self.POLES), self.Z0)
        assert design.epsilon_observed <= design.epsilon + 1e-9

    def test_double_root_identity(self):
        # q(lam)[1 - alpha0(lam - z0)] - b_m T_{m-1}(lam) has a double root
        # at z0: both value and first derivative vanish
        design = design_derivative_target(PoleSet(points=self.POLES), self.Z0)
        q = design.poles.q()
        from markovdesign.polynomial import cheb_eval, cheb_eval_deriv
        m = design.poles.m
        z0 = self.Z0

        def f(z):
            return q(z) * (1.0 - design.alpha0 * (z - z0)) - design.b_m * cheb_eval(m - 1, z)

        assert abs(f(z0)) < 1e-9
        h = 1e-6
        deriv = (f(z0 + h) - f(z0 - h)) / (2 * h)
        assert abs(deriv) < 1e-4

    def test_deviation_definition(self):
        design = design_derivative_target(PoleSet(points=self.POLES), self.Z0)
        lam = np.linspace(-1, 1, 11)
        want = 1.0 / (lam - self.Z0) ** 2 - design.alpha0 / (lam - self.Z0)
        assert np.allclose(design.target_eval(lam.astype(complex)), want)


class TestZeroFactor:
    def test_zero_at_pole_removes_frequency(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        s = monic_from_roots([DIELECTRIC_POLES[0]])
        design = design_with_zero_factor(poles, s)
        assert abs(design.alphas[0]) < 1e-12
        assert np.all(np.abs(design.alphas[1:]) > 1e-12)

    def test_trivial_factor_matches_unit(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        s = ComplexPolynomial((1.0,))
        if s.degree == 0:
            design = design_with_zero_factor(poles, s)
        unit = design_unit(poles)
        assert np.allclose(design.alphas, unit.alphas, rtol=1e-12)

    def test_certificate_dominates_observation(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            poles = random_poles(rng, int(rng.integers(2, 6)))
            s = monic_from_roots([poles.points[0]])
            design = design_with_zero_factor(poles, s)
            assert design.epsilon_observed <= design.epsilon + 1e-9

    def test_non_monic_rejected(self):
        poles = PoleSet(points=DIELECTRIC_POLES)
        with pytest.raises(DesignError):
            design_with_zero_factor(poles, ComplexPolynomial((0.0, 2.0)))

    def test_degree_must_be_below_m(self):
        poles = PoleSet(points=(2.0 + 1j,))
        with pytest.raises(DesignError):
            design_with_zero_factor(poles, monic_from_roots([2.0 + 1j]))


class TestStieltjesCoefficients:
    def test_frequency_target_transform(self):
        design = design_frequency_target(
            PoleSet(points=TestFrequencyTarget.POLES), TestFrequencyTarget.Z0)
        xi = stieltjes_coefficients(design, design.z0)
        want = design.alphas * (1.0 - design.z0) / (1.0 - design.poles.array)
        assert np.allclose(xi, want)

    def test_derivative_target_prepends_offset(self):
        design = design_derivative_target(
            PoleSet(points=TestDerivativeTarget.POLES), TestDerivativeTarget.Z0)
        xi = stieltjes_coefficients(design, design.z0)
        assert xi.size == design.poles.m + 1
        assert xi[0] == pytest.approx(design.alpha0 - 1.0 / (1.0 - design.z0))

    def test_unit_mode_rejected(self):
        design = design_unit(PoleSet(points=DIELECTRIC_POLES))
        with pytest.raises(DesignError):
            stieltjes_coefficients(design, 2.0 + 1j)


class TestVerifySup:
    def test_grid_size_refinement_consistency(self):
        design = design_unit(PoleSet(points=DIELECTRIC_POLES))
        coarse = verify_sup(design, grid_size=256)
        fine = verify_sup(design, grid_size=8192)
        assert coarse == pytest.approx(fine, rel=1e-6)

    def test_inconsistent_pole_set_rejected(self):
        design = design_unit(PoleSet(points=DIELECTRIC_POLES))
        other = PoleSet(points=(2.0 + 1j,))
        with pytest.raises(DesignError):
            verify_sup(design, poles=other)

    def test_stores_observation(self):
        design = design_unit(PoleSet(points=DIELECTRIC_POLES))
        design.epsilon_observed = float("nan")
        value = verify_sup(design)
        assert design.epsilon_observed == value
