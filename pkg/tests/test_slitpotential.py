"""Balayage measures, the mass-condition root and the explicit solution.

Frozen reference values come from the independent elliptic-integral
oracle in ``elliptic_oracle.py``; regenerate with that module if the
geometry conventions ever change.
"""

import math

import numpy as np
import pytest

from arcwidom.conformal import ArcGeometry, green_omega0
from arcwidom.extremal import ExtremalProblem, solve_extremal
from arcwidom.slitpotential import (
    BranchTrackingError,
    SlitSystem,
    TrivialRegimeError,
    balayage_onto_slit,
    build_qn,
    complex_green_omega_n,
    green_omega_n,
    poisson_sup_mass,
    s_n_eval,
    solve_xn,
)

G = ArcGeometry(math.pi / 2)

# elliptic-integral oracle values (40-digit arithmetic, truncated)
MASS_ORACLE = {
    (math.pi / 2, 0.5, -1j): 0.3947218050831816,
    (math.pi / 2, 0.3, -1j): 0.3310135387708513,
    (math.pi / 2, 0.5, -0.3 - 0.8j): 0.4384038891288481,
    (2.2, 0.4, None): 0.20599747840875596,  # pole at z_inf of alpha = 2.2
}
XN_ORACLE = {
    2: 0.30632714759886337,
    3: 0.11972592295680241,
    4: 0.04895088007192815,
    8: 0.0014357586721800981,
    12: 4.226453403993631e-05,
}


class TestBalayage:
    def test_masses_match_elliptic_oracle(self):
        for (alpha, x, pole), ref in MASS_ORACLE.items():
            pole = complex(0.0, -math.tan(alpha / 2)) if pole is None else pole
            nu = balayage_onto_slit(pole, x)
            assert abs(nu.mass - ref) < 1e-10

    def test_mass_vanishes_with_slit(self):
        masses = [balayage_onto_slit(-1j, x).mass for x in (0.3, 0.1, 1e-2, 1e-4, 1e-8)]
        assert all(b < a for a, b in zip(masses, masses[1:]))
        assert masses[-1] < 0.06

    def test_mass_increasing_in_halfwidth(self):
        xs = np.linspace(0.05, 0.9, 12)
        masses = [balayage_onto_slit(-1j, x).mass for x in xs]
        assert all(b > a for a, b in zip(masses, masses[1:]))

    def test_collocation_degree_convergence(self):
        m1 = balayage_onto_slit(-1j, 0.5, m=32).mass
        m2 = balayage_onto_slit(-1j, 0.5, m=64).mass
        assert abs(m1 - m2) < 1e-9

    def test_density_nonnegative_and_symmetric(self):
        nu = balayage_onto_slit(G.z_inf, 0.4)
        # weights carry (pi/nq) phi(t_i): the density numerator must be >= 0
        assert np.min(nu.weights) > 0.0
        # axis pole: density even in t, odd coefficients vanish
        assert np.max(np.abs(nu.coeffs[1::2])) < 1e-13

    def test_potential_against_dense_quadrature(self):
        nu = balayage_onto_slit(-1j, 0.5)
        th = (np.arange(4096) + 0.5) * math.pi / 4096
        t = 0.5 * np.cos(th)
        phi = np.cos(np.outer(th, np.arange(len(nu.coeffs)))) @ nu.coeffs
        for z in (0.8 + 0.9j, -1.4 - 0.3j, 0.75 + 0j, 2.0 - 1.0j):
            dense = float(np.mean(green_omega0(z, t) * phi) * math.pi)
            assert abs(nu.potential(z) - dense) < 1e-10

    def test_input_validation(self):
        with pytest.raises(ValueError):
            balayage_onto_slit(-1j, 0.0)
        with pytest.raises(ValueError):
            balayage_onto_slit(-1j, 1.0)
        with pytest.raises(ValueError):
            balayage_onto_slit(0.2 + 0.0j, 0.5)  # on the slit

    def test_poisson_sup(self):
        assert abs(poisson_sup_mass(-1j) - 0.5) < 1e-15
        with pytest.raises(ValueError):
            poisson_sup_mass(1j)


class TestMassCondition:
    def test_root_matches_oracle(self):
        for n, ref in XN_ORACLE.items():
            xn = solve_xn(n, G)
            assert xn is not None
            assert abs(xn - ref) / ref < 1e-6

    def test_trivial_regime_detection(self):
        assert solve_xn(0, G) is None
        assert solve_xn(1, G) is None
        assert solve_xn(2, G) is not None
        with pytest.raises(TrivialRegimeError):
            SlitSystem.build(1, G)

    def test_xn_strictly_decreasing(self):
        xs = [solve_xn(n, G) for n in range(2, 16)]
        assert all(b < a for a, b in zip(xs, xs[1:]))

    def test_total_mass_is_one(self):
        for n in (3, 7, 12, 26):
            slits = SlitSystem.build(n, G)
            assert abs(slits.total_mass - 1.0) < 1e-10

    def test_general_pole_multiset(self):
        zeros = [(G.z_inf, 3), (-0.3 - 0.8j, 2)]
        slits = SlitSystem.build(5, G, zeros=zeros)
        assert abs(slits.total_mass - 1.0) < 1e-10
        assert len(slits.poles) == 2

    def test_weak_star_convergence(self):
        # (n+1) * integral of g_0(z, .) against nu converges to g_0(z, 0)
        z = 1.7 + 0.6j
        target = float(green_omega0(z, 0.0))
        errs = []
        for n in (4, 8, 12, 16):
            slits = SlitSystem.build(n, G)
            nu = slits.measures[G.z_inf]
            errs.append(abs((n + 1) * nu.potential(z) - target))
        assert all(b < a for a, b in zip(errs, errs[1:]))


class TestSlitGreens:
    def setup_method(self):
        self.slits = SlitSystem.build(4, G)

    def test_boundary_vanishing(self):
        xs = np.linspace(-0.95, 0.95, 9) * self.slits.x_n
        g = green_omega_n(xs, G.z_inf, self.slits)
        assert np.max(np.abs(g)) < 1e-8

    def test_symmetry_by_role_exchange(self):
        rng = np.random.default_rng(5)
        for _ in range(6):
            a = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.2, 1.5))
            b = complex(rng.uniform(-1.5, 1.5), -rng.uniform(0.2, 1.5))
            d = green_omega_n(a, b, self.slits) - green_omega_n(b, a, self.slits)
            assert abs(d) < 1e-7

    def test_domain_monotonicity(self):
        a, b = 0.4 + 0.6j, -0.2 - 1.3j
        assert green_omega_n(a, b, self.slits) < float(green_omega0(a, b))

    def test_pole_collision_flagged(self):
        with pytest.raises(ValueError):
            green_omega_n(0.5 + 0.5j, 0.5 + 0.5j, self.slits)

    def test_complex_green_modulus(self):
        for z in (0.4 + 0.6j, -1.2 + 0.4j, 0.6 - 0.9j):
            bn = complex_green_omega_n(z, G.z_inf, self.slits)
            gn = green_omega_n(z, G.z_inf, self.slits)
            assert abs(abs(bn) - math.exp(-gn)) < 1e-10

    def test_modulus_domain_monotonicity(self):
        # g shrinks with the domain, so the complex Green's modulus grows
        z = 0.4 + 0.6j
        bn = complex_green_omega_n(z, G.z_inf, self.slits)
        assert abs(bn) > math.exp(-float(green_omega0(z, G.z_inf)))

    def test_two_path_single_valuedness(self):
        slits = self.slits
        n1 = slits.n + 1
        gap = 0.5 * (slits.x_n + 1.0)
        z = -0.5 - 0.8j
        right = complex_green_omega_n(z, G.z_inf, slits,
                                      path=(complex(gap, 0.1), complex(gap, -0.1)))
        left = complex_green_omega_n(z, G.z_inf, slits,
                                     path=(complex(-gap, 0.1), complex(-gap, -0.1)))
        assert abs(right - left) > 1e-3  # branches genuinely differ
        assert abs(right**n1 - left**n1) < 1e-8  # the power combination does not


class TestSFactor:
    def test_normalization_at_anchor(self):
        slits = SlitSystem.build(5, G)
        assert abs(complex(s_n_eval(G.z0, slits)) - 1.0) < 1e-14

    def test_square_matches_rational(self):
        slits = SlitSystem.build(5, G)
        rng = np.random.default_rng(9)
        x, t = slits.x_n, G.t
        for _ in range(40):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if min(abs(z - b) for b in (x, -x, 1.0, -1.0)) < 1e-2:
                continue
            s = complex(s_n_eval(z, slits))
            rat = (1 + t * t) / (t * t + x * x) * (z * z - x * x) / (z * z - 1.0)
            assert abs(s * s - rat) < 1e-12 * max(1.0, abs(rat))

    def test_conjugate_symmetry_of_square(self):
        # the rational square has real coefficients in z^2
        slits = SlitSystem.build(5, G)
        z = 0.8 + 0.7j
        s2 = complex(s_n_eval(z, slits)) ** 2
        s2c = complex(s_n_eval(z.conjugate(), slits)) ** 2
        assert abs(s2c - s2.conjugate()) < 1e-12

    def test_branch_points_rejected(self):
        slits = SlitSystem.build(5, G)
        with pytest.raises(ValueError):
            s_n_eval(1.0, slits)
        with pytest.raises(ValueError):
            s_n_eval(slits.x_n, slits)


class TestExplicitSolution:
    def test_certificates_default_poles(self):
        for n in (2, 5, 8):
            qn = build_qn(SlitSystem.build(n, G))
            assert qn.fit_residual < 1e-7
            assert qn.holdout_residual < 1e-7
            assert abs(qn.sup_check - 1.0) < 1e-6

    def test_attained_matches_product_formula(self):
        for n in (3, 6):
            slits = SlitSystem.build(n, G)
            qn = build_qn(slits)
            e_at_z0 = abs(G.z0 - G.z_inf) ** n
            prod = e_at_z0 * math.exp((n + 1) * green_omega_n(G.z0, G.z_inf, slits))
            assert abs(qn.attained - prod) / prod < 1e-6

    def test_pullback_matches_solver(self):
        n = 6
        slits = SlitSystem.build(n, G)
        qn = build_qn(slits)
        sol = solve_extremal(ExtremalProblem(G, n, 0.0, tol=1e-9, max_rounds=14))
        th = G.alpha * np.cos(math.pi * (np.arange(128) + 0.5) / 128)
        arc = np.exp(1j * th)
        gap = np.max(np.abs(np.abs(qn.pullback(arc)) - np.abs(sol.poly(arc))))
        assert gap < 1e-4

    def test_pullback_phase_normalization(self):
        from arcwidom.conformal import INF, b_omega_alpha
        n = 4
        qn = build_qn(SlitSystem.build(n, G))
        omega = complex(b_omega_alpha(0.0, INF, G)) ** n * complex(qn.pullback(0.0))
        assert abs(omega.imag) < 1e-12 * abs(omega)
        assert omega.real > 0.0

    def test_general_pole_multiset_build(self):
        zeros = [(G.z_inf, 3), (-0.3 - 0.8j, 2)]
        slits = SlitSystem.build(5, G, zeros=zeros)
        qn = build_qn(slits)
        assert qn.fit_residual < 1e-7 and qn.holdout_residual < 1e-7
        assert abs(qn.sup_check - 1.0) < 1e-6
        e_z0 = abs(G.z0 - G.z_inf) ** 3 * abs(G.z0 + 0.3 + 0.8j) ** 2
        prod = e_z0 * math.exp(sum(m * green_omega_n(G.z0, p, slits)
                                   for p, m in slits.poles))
        assert abs(qn.attained - prod) / prod < 1e-6

    def test_trivial_degree_raises(self):
        with pytest.raises(TrivialRegimeError):
            build_qn(SlitSystem.build(0, G))
