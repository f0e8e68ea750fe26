"""Chart maps, Green's data and the symmetry circle."""

import cmath
import math

import numpy as np
import pytest

from arcwidom.conformal import (
    INF,
    ArcGeometry,
    Chart,
    ChartPoint,
    ChartError,
    DomainBoundaryError,
    SymmetryCircle,
    b_omega0,
    b_omega_alpha,
    blaschke_halfplane,
    green_halfplane,
    green_omega0,
    green_omega_alpha,
    lam_of_u,
    lambda_from_u,
    symmetry_circle,
    u_from_z,
    u_of_z,
    w_from_z,
    w_of_z,
    z_from_u,
    z_of_u,
)

G = ArcGeometry(math.pi / 2)


def random_domain_points(rng, size, geom=G):
    """Points of the arc complement, away from the arc."""
    pts = []
    while len(pts) < size:
        u = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        th = abs(cmath.phase(u))
        close = th <= geom.alpha + 0.05 and abs(abs(u) - 1.0) < 0.05
        if not close and abs(u - 1.0) > 1e-3:
            pts.append(u)
    return np.array(pts)


class TestArcGeometry:
    def test_alpha_bounds(self):
        for bad in (0.0, -1.0, math.pi, 4.0):
            with pytest.raises(ValueError):
                ArcGeometry(bad)

    def test_z0_purely_imaginary_positive(self):
        for a in (0.3, 1.2, 2.8):
            g = ArcGeometry(a)
            assert g.z0.real == 0.0 and g.z0.imag > 0.0
            assert g.z_inf == g.z0.conjugate()

    def test_w0_unimodular_upper(self):
        for a in (0.3, 1.2, 2.8):
            g = ArcGeometry(a)
            assert abs(abs(g.w0) - 1.0) < 1e-15
            assert g.w0.imag > 0.0

    def test_capacity_monotone_in_alpha(self):
        caps = [ArcGeometry(a).cap for a in np.linspace(0.05, 3.1, 40)]
        assert all(b > a for a, b in zip(caps, caps[1:]))


class TestCharts:
    def test_u_of_special_points(self):
        assert u_of_z(G.z0, G) == 0.0
        assert abs(u_of_z(-1.0, G) - cmath.exp(1j * G.alpha)) < 1e-14
        assert abs(u_of_z(1.0, G) - cmath.exp(-1j * G.alpha)) < 1e-14
        assert cmath.isinf(u_of_z(G.z_inf, G))
        assert z_of_u(INF, G) == G.z_inf
        assert cmath.isinf(z_of_u(1.0, G))

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        u = random_domain_points(rng, 200)
        z = z_of_u(u, G)
        assert np.max(np.abs(u_of_z(z, G) - u)) < 1e-12

    def test_w_examples(self):
        assert w_of_z(0.0) == 1j
        assert abs(w_of_z(G.z0) - G.w0) < 1e-14
        # w(iy) -> 1 from inside the upper half-plane as y grows
        prev = abs(w_of_z(1e2 * 1j) - 1.0)
        for k in (3, 4, 5):
            cur = abs(w_of_z(10.0**k * 1j) - 1.0)
            assert cur < prev
            assert complex(w_of_z(10.0**k * 1j)).imag > 0.0
            prev = cur
        assert prev < 1e-4

    def test_w_in_upper_half_plane(self):
        rng = np.random.default_rng(11)
        z = z_of_u(random_domain_points(rng, 300), G)
        assert np.all(np.imag(w_of_z(z)) > 0.0)

    def test_lambda_examples(self):
        assert abs(lam_of_u(0.0, G) - cmath.exp(-1j * G.alpha / 4)) < 1e-14
        assert abs(lam_of_u(INF, G) - cmath.exp(1j * G.alpha / 4)) < 1e-14

    def test_lambda_lands_in_sector(self):
        rng = np.random.default_rng(13)
        lam = lam_of_u(random_domain_points(rng, 10_000), G)
        assert np.max(np.abs(np.angle(lam))) <= math.pi / 4 + 1e-12

    def test_lambda_real_on_complementary_arc(self):
        th = np.linspace(G.alpha + 1e-3, 2 * math.pi - G.alpha - 1e-3, 400)
        lam = lam_of_u(np.exp(1j * th), G)
        assert np.max(np.abs(np.imag(lam))) < 1e-10
        assert np.min(np.real(lam)) > 0.0

    def test_lambda_squared_is_minus_i_w(self):
        rng = np.random.default_rng(17)
        u = random_domain_points(rng, 200)
        lam = lam_of_u(u, G)
        w = w_of_z(z_of_u(u, G))
        assert np.max(np.abs(lam * lam + 1j * w)) < 1e-12


class TestChartPoints:
    def test_wrong_chart_rejected(self):
        with pytest.raises(ChartError):
            u_from_z(ChartPoint(Chart.U, 0.5j), G)
        with pytest.raises(ChartError):
            z_from_u(ChartPoint(Chart.Z, 0.5j), G)
        with pytest.raises(ChartError):
            w_from_z(ChartPoint(Chart.W, 1j))

    def test_typed_round_trip(self):
        p = ChartPoint(Chart.U, 0.4 + 0.2j)
        q = u_from_z(z_from_u(p, G), G)
        assert q.chart is Chart.U
        assert abs(q.value - p.value) < 1e-14

    def test_tag_invariants(self):
        with pytest.raises(ChartError):
            ChartPoint(Chart.W, -1j)
        with pytest.raises(ChartError):
            ChartPoint(Chart.LAMBDA, cmath.exp(1j * 1.1))

    def test_boundary_errors(self):
        with pytest.raises(DomainBoundaryError):
            w_from_z(ChartPoint(Chart.Z, 1.5 + 0.0j))
        with pytest.raises(DomainBoundaryError):
            lambda_from_u(ChartPoint(Chart.U, cmath.exp(1j * G.alpha)), G)


class TestGreens:
    def test_blaschke_examples(self):
        assert blaschke_halfplane(0.3 + 0.4j, 0.3 + 0.4j) == 0.0
        # unimodular on the real boundary
        b = blaschke_halfplane(np.array([0.5 + 0j, -2.0 + 0j]), 0.3 + 0.9j)
        assert np.max(np.abs(np.abs(b) - 1.0)) < 1e-14
        # |b(w0, i)| = tan(alpha/4)
        assert abs(abs(blaschke_halfplane(G.w0, 1j)) - math.tan(G.alpha / 4)) < 1e-14
        assert abs(abs(blaschke_halfplane(G.w0, 1j)) - 0.41421356237309503) < 1e-8

    def test_blaschke_pole_collision(self):
        with pytest.raises(ZeroDivisionError):
            blaschke_halfplane(0.3 - 0.4j, 0.3 + 0.4j)

    def test_green_omega0_value_at_conjugate_pair(self):
        # oracle: half-plane blaschke with w(conj z0) = -conj(w0)
        direct = green_omega0(G.z0, G.z_inf)
        oracle = -math.log(abs(blaschke_halfplane(G.w0, -G.w0.conjugate())))
        assert abs(direct - oracle) < 1e-14
        assert abs(direct - (-math.log(math.sin(G.alpha / 2)))) < 1e-14
        assert abs(direct - (-math.log(G.cap))) < 1e-14

    def test_b_omega0_modulus_example(self):
        assert abs(abs(b_omega0(G.z0, 0.0)) - math.tan(G.alpha / 4)) < 1e-14

    def test_green_symmetry(self):
        rng = np.random.default_rng(23)
        z = z_of_u(random_domain_points(rng, 60), G)
        z1 = z_of_u(random_domain_points(rng, 60), G)
        mask = np.abs(z - z1) > 1e-3
        d = green_omega0(z[mask], z1[mask]) - green_omega0(z1[mask], z[mask])
        assert np.max(np.abs(d)) < 1e-12

    def test_modulus_is_exp_minus_green(self):
        rng = np.random.default_rng(29)
        u = random_domain_points(rng, 80)
        u1 = 0.2 - 0.4j
        d = np.abs(b_omega_alpha(u, u1, G)) - np.exp(-np.asarray(green_omega_alpha(u, u1, G)))
        assert np.max(np.abs(d)) < 1e-12

    def test_conformal_invariance_through_sector(self):
        # half-plane route vs right-half-plane route through lambda^2
        rng = np.random.default_rng(31)
        u = random_domain_points(rng, 100)
        u1 = 0.3 + 0.25j
        l, l1 = lam_of_u(u, G), lam_of_u(u1, G)
        s, s1 = l * l, l1 * l1
        g_sector = np.log(np.abs(s + np.conj(s1))) - np.log(np.abs(s - s1))
        d = g_sector - np.asarray(green_omega_alpha(u, u1, G))
        assert np.max(np.abs(d)) < 1e-10

    def test_green_alpha_at_origin_and_infinity(self):
        assert abs(green_omega_alpha(0.0, INF, G) + math.log(math.sin(G.alpha / 2))) < 1e-14

    def test_reflection_symmetry_of_b_inf(self):
        rng = np.random.default_rng(37)
        u = random_domain_points(rng, 50)
        d = np.asarray(b_omega_alpha(np.conj(u), INF, G)) - np.conj(b_omega_alpha(u, INF, G))
        assert np.max(np.abs(d)) < 1e-12

    def test_boundary_values_vanish(self):
        # g of the slit model tends to zero on the rays
        for x in (1.0 + 1e-9, 5.0, -2.0):
            assert abs(green_omega0(x + 1e-9j, 0.4j)) < 1e-3 or x == 5.0
        xs = np.array([1.5, 3.0, -2.5])
        g = green_omega0(xs + 1e-12j, 0.4j)
        assert np.max(np.abs(g)) < 1e-10


class TestCapacity:
    def test_numeric_limit_richardson(self):
        # |u b(u, inf)| -> cap with a 1/u tail; Richardson kills the tail
        vals = []
        for k in (6, 7):
            u = -(10.0**k)
            vals.append(abs(u * complex(b_omega_alpha(u, INF, G))))
        extrap = (10.0 * vals[1] - vals[0]) / 9.0
        assert abs(extrap - G.cap) < 1e-9

    def test_cauchy_convergence(self):
        diffs = []
        prev = None
        for k in range(3, 9):
            u = -(10.0**k)
            v = abs(u * complex(b_omega_alpha(u, INF, G)))
            if prev is not None:
                diffs.append(abs(v - prev))
            prev = v
        assert all(b < a for a, b in zip(diffs, diffs[1:]))

    def test_identity_with_sine_over_grid(self):
        for a in np.linspace(0.1, 3.0, 12):
            g = ArcGeometry(a)
            u = -(10.0**6)
            v = abs(u * complex(b_omega_alpha(u, INF, g)))
            assert abs(v - math.sin(a / 2)) < 1e-5

    def test_capacity_example(self):
        assert abs(G.cap - 0.7071067811865476) < 1e-15


class TestSymmetryCircle:
    def test_reference_example(self):
        sc = symmetry_circle(0.5 + 0.5j)
        assert abs(sc.center - 1.5) < 1e-14
        assert abs(sc.radius - math.sqrt(1.25)) < 1e-14
        assert abs(sc.x0 - 0.3819660112501051) < 1e-12

    def test_reflection_swaps_endpoints(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-2, 2))
            if abs(z.real) < 1e-6 or abs(z.imag) < 1e-6:
                continue
            sc = symmetry_circle(z)
            assert abs(sc.reflect(-1.0) - 1.0) < 1e-10
            assert abs(sc.reflect(1.0) + 1.0) < 1e-10
            assert abs(sc.reflect(sc.x0) - sc.x0) < 1e-10
            assert abs(sc.radius**2 - (sc.center**2 - 1.0)) < 1e-10
            assert -1.0 < sc.x0 < 1.0
            # circle passes through the anchor pair
            assert abs(abs(z - sc.center) - sc.radius) < 1e-10

    def test_degenerate_branch(self):
        sc = symmetry_circle(0.7j)
        assert sc.degenerate and sc.x0 == 0.0
        assert abs(sc.reflect(-1.0) - 1.0) < 1e-15

    def test_chart_consistency(self):
        # w(x0) = i |w(z_u0)| and w(conj z_u0) = -conj(w(z_u0))
        rng = np.random.default_rng(43)
        for _ in range(25):
            z = complex(rng.uniform(0.05, 0.8), rng.uniform(0.1, 1.5))
            sc = symmetry_circle(z)
            w = complex(w_of_z(z))
            assert abs(complex(w_of_z(sc.x0)) - 1j * abs(w)) < 1e-11
            assert abs(complex(w_of_z(z.conjugate())) + w.conjugate()) < 1e-12

    def test_real_anchor_fixes_itself(self):
        sc = symmetry_circle(0.37)
        assert abs(sc.x0 - 0.37) < 1e-14
