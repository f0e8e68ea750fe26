"""Finite-degree machinery on the slit model domain.

For degree ``n`` the model domain is ``Omega_n = Omega_0 \\ I_n`` with
``I_n = [-x_n, x_n]``.  The half-width ``x_n`` is the unique root of the
mass condition: the harmonic measures of ``I_n`` seen from the pole multiset
(one pole per zero of the weight polynomial ``E_n``, plus one at ``z_inf``)
must sum to one.  With the default pole set (``z_inf`` with multiplicity
``n + 1``) the condition reads ``omega_n(I_n) = 1/(n+1)``.

Harmonic measure restricted to the slit is represented by its balayage
density against the endpoint weight ``1/sqrt(x_n^2 - t^2)``: the density
numerator is expanded in Chebyshev polynomials and the first-kind integral
equation

    int_{I_n} g_0(x', t) dnu(t) = g_0(x', pole),   x' in I_n,

is collocated at Chebyshev points.  Writing ``g_0(x', t) = -log|x' - t| +
S(x', t)`` with an analytic remainder turns the singular part into the
classical closed-form Chebyshev integrals, so the scheme is spectrally
accurate.

Green's functions of ``Omega_n`` follow from the sweeping identity
``g_n(z, z1) = g_0(z, z1) - int g_0(z, t) dnu_{z1}(t)``;  complex Green's
functions need a continuous log branch, which is propagated along polyline
paths from the base point ``i`` with adaptive step bisection.

``build_qn`` assembles the explicit extremal polynomial of the weighted
problem from these ingredients, certifies that the assembled expression is
a polynomial by a circle fit with held-out validation, and returns it
together with its pull-back to the arc chart.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .conformal import ArcGeometry, b_omega_alpha, green_omega0, w_of_z
from .extremal import ComplexPoly

__all__ = [
    "BalayageMeasure",
    "SlitSystem",
    "QnResult",
    "TrivialRegimeError",
    "BranchTrackingError",
    "balayage_onto_slit",
    "poisson_sup_mass",
    "solve_xn",
    "green_omega_n",
    "complex_green_omega_n",
    "s_n_eval",
    "build_qn",
]

_LOG2 = math.log(2.0)


class TrivialRegimeError(RuntimeError):
    """The mass condition has no root: the extremal polynomial is a monomial."""


class BranchTrackingError(RuntimeError):
    """Phase continuation failed or the assembled expression is not a polynomial."""


def _a_of(t):
    """a(t) = sqrt((1 - t)/(1 + t)) so that w(t) = i a(t) on (-1, 1)."""
    return np.sqrt((1.0 - t) / (1.0 + t))


def _smooth_kernel(z, t):
    """S(z, t) = g_0(z, t) + log|z - t|, analytic in t on (-1, 1).

    Uses the cancellation-free identity
    ``w(z) - i a(t) = 2 (z - t) / ((1 + z)(1 + t)(w(z) + i a(t)))``.
    """
    w = w_of_z(z)
    a = _a_of(t)
    return (
        2.0 * np.log(np.abs(w + 1j * a))
        + np.log(np.abs(1.0 + z))
        + np.log1p(t)
        - _LOG2
    )


def _joukowski_exterior(zeta):
    """J with zeta = (J + 1/J)/2 and |J| >= 1; continuous up to [-1, 1]."""
    zeta = np.asarray(zeta, dtype=complex)
    on_cut = (zeta.imag == 0.0) & (np.abs(zeta.real) <= 1.0)
    safe = np.where(on_cut, 2.0 + 0.0j, zeta)
    ext = safe * (1.0 + np.sqrt(1.0 - 1.0 / (safe * safe)))
    cut = np.exp(1j * np.arccos(np.clip(zeta.real, -1.0, 1.0)))
    return np.where(on_cut, cut, ext)


@dataclass(frozen=True)
class BalayageMeasure:
    """Harmonic-measure restriction to the slit, swept from one pole.

    ``coeffs`` are the Chebyshev coefficients of the density numerator
    phi(t) = sum_k c_k T_k(t/x); the measure is phi(t) dt / sqrt(x^2 - t^2)
    and its total mass is pi c_0.
    """

    pole: complex
    x: float
    coeffs: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    cond: float

    @property
    def mass(self) -> float:
        return math.pi * float(self.coeffs[0])

    def potential(self, z):
        """int g_0(z, t) dnu(t), valid for z anywhere off the slits."""
        z = np.asarray(z, dtype=complex)
        x = self.x
        c = self.coeffs
        J = _joukowski_exterior(z / x)
        log_part = math.pi * c[0] * (math.log(x) - _LOG2 + np.log(np.abs(J)))
        invJ = 1.0 / J
        Jk = np.ones_like(J)
        for k in range(1, len(c)):
            Jk = Jk * invJ
            log_part = log_part - math.pi * (c[k] / k) * np.real(Jk)
        smooth = _smooth_kernel(z[..., None], self.nodes) @ self.weights
        out = -log_part + smooth
        return out if out.ndim else float(out)


def balayage_onto_slit(pole: complex, x: float, m: int = 32, n_quad: int | None = None) -> BalayageMeasure:
    """Solve the balayage integral equation for one pole and slit half-width x."""
    pole = complex(pole)
    if not (0.0 < x < 1.0):
        raise ValueError(f"slit half-width must lie in (0, 1), got {x}")
    if pole.imag == 0.0 and (abs(pole.real) >= 1.0 or abs(pole.real) <= x):
        raise ValueError(f"pole {pole!r} lies on the boundary slits")
    nq = n_quad if n_quad is not None else max(2 * m, 64)

    psi = (np.arange(m) + 0.5) * math.pi / m
    xc = x * np.cos(psi)
    th = (np.arange(nq) + 0.5) * math.pi / nq
    tq = x * np.cos(th)

    # singular part: int -log|x'-t| T_k(t/x) / sqrt(x^2-t^2) dt in closed form
    A = np.empty((m, m))
    A[:, 0] = math.pi * math.log(2.0 / x)
    for k in range(1, m):
        A[:, k] = (math.pi / k) * np.cos(k * psi)
    # analytic remainder by midpoint (Gauss-Chebyshev) quadrature
    S = _smooth_kernel(xc[:, None], tq[None, :])
    C = np.cos(np.outer(th, np.arange(m)))
    A += (math.pi / nq) * (S @ C)

    rhs = green_omega0(xc, pole)
    coeffs = np.linalg.solve(A, rhs)
    cond = float(np.linalg.cond(A))
    if cond > 1e12:
        raise RuntimeError(f"ill-conditioned collocation system: cond ~ {cond:.3e}")
    weights = (math.pi / nq) * (C @ coeffs)
    return BalayageMeasure(pole=pole, x=x, coeffs=coeffs, nodes=tq, weights=weights, cond=cond)


def poisson_sup_mass(pole: complex) -> float:
    """Limit of the swept mass as the slit fills (-1, 1).

    For a pole in the open lower half-plane this is the half-plane harmonic
    measure of [-1, 1]; the mass condition has a root exactly when the
    multiplicity-weighted sum of these limits exceeds one.
    """
    pole = complex(pole)
    if pole.imag >= 0.0:
        raise ValueError("pole must lie in the open lower half-plane")
    h = -pole.imag
    return (math.atan((1.0 - pole.real) / h) + math.atan((1.0 + pole.real) / h)) / math.pi


def _normalize_poles(n: int, geom: ArcGeometry, zeros=None):
    """Merge the weight zeros with the extra pole at z_inf; validate counts."""
    if zeros is None:
        zeros = [(geom.z_inf, n)]
    merged: dict[complex, int] = {}
    total = 0
    for p, mult in zeros:
        p = complex(p)
        if p.imag >= 0.0:
            raise ValueError(f"weight zeros must lie in the open lower half-plane: {p!r}")
        merged[p] = merged.get(p, 0) + int(mult)
        total += int(mult)
    if total != n:
        raise ValueError(f"zero multiplicities must sum to n={n}, got {total}")
    zi = complex(geom.z_inf)
    poles = dict(merged)
    poles[zi] = poles.get(zi, 0) + 1
    return tuple(sorted(merged.items(), key=lambda kv: (kv[0].real, kv[0].imag))), tuple(
        sorted(poles.items(), key=lambda kv: (kv[0].real, kv[0].imag))
    )


def solve_xn(n: int, geom: ArcGeometry, zeros=None, m: int | None = None) -> float | None:
    """Root of the mass condition, or None in the trivial (monomial) regime.

    The root collapses geometrically in n, so the search runs in log(x);
    bisection is finished with a few secant steps on the mass residual.
    """
    _, poles = _normalize_poles(n, geom, zeros)
    if m is None:
        m = 64 if n > 24 else 32

    sup = sum(mult * poisson_sup_mass(p) for p, mult in poles)
    if sup <= 1.0 + 1e-12:
        return None

    def mass_excess(xi: float) -> float:
        x = math.exp(xi)
        return sum(mult * balayage_onto_slit(p, x, m=m).mass for p, mult in poles) - 1.0

    hi = math.log(1.0 - 1e-8)
    f_hi = mass_excess(hi)
    if f_hi <= 0.0:
        # root squeezed against x = 1 beyond quadrature resolution
        return None
    lo = math.log(0.5)
    f_lo = mass_excess(lo)
    while f_lo > 0.0:
        lo -= 4.0
        if lo < math.log(1e-280):
            raise RuntimeError("mass condition root below representable half-widths")
        f_lo = mass_excess(lo)

    for _ in range(64):
        mid = 0.5 * (lo + hi)
        f_mid = mass_excess(mid)
        if f_mid > 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < 1e-13 or abs(f_mid) < 1e-14:
            break
    # secant polish on the bracket
    a, fa, b, fb = lo, f_lo, hi, f_hi
    for _ in range(4):
        if fb == fa:
            break
        c = b - fb * (b - a) / (fb - fa)
        if not (lo <= c <= hi):
            break
        fc = mass_excess(c)
        a, fa, b, fb = b, fb, c, fc
        if abs(fc) < 1e-15:
            break
    return math.exp(b)


@dataclass(frozen=True)
class SlitSystem:
    """The solved finite-degree domain: half-width, poles and their measures."""

    n: int
    geom: ArcGeometry
    x_n: float
    zeros: tuple  # ((point, multiplicity), ...) of the weight polynomial
    poles: tuple  # zeros plus one extra pole at z_inf
    measures: dict = field(repr=False)
    m: int = 32

    @classmethod
    def build(cls, n: int, geom: ArcGeometry, zeros=None, m: int | None = None) -> "SlitSystem":
        zr, poles = _normalize_poles(n, geom, zeros)
        if m is None:
            m = 64 if n > 24 else 32
        x = solve_xn(n, geom, zeros, m=m)
        if x is None:
            raise TrivialRegimeError(
                f"degree {n} is in the trivial regime for alpha={geom.alpha}: "
                "the extremal polynomial is the monomial"
            )
        measures = {p: balayage_onto_slit(p, x, m=m) for p, _ in poles}
        return cls(n=n, geom=geom, x_n=x, zeros=zr, poles=poles, measures=measures, m=m)

    @property
    def masses(self) -> dict:
        return {p: self.measures[p].mass for p, _ in self.poles}

    @property
    def total_mass(self) -> float:
        return sum(mult * self.measures[p].mass for p, mult in self.poles)

    def measure_for(self, z1: complex) -> BalayageMeasure:
        z1 = complex(z1)
        if z1 in self.measures:
            return self.measures[z1]
        return balayage_onto_slit(z1, self.x_n, m=self.m)

    def green(self, z, z1) -> float:
        """g of the slit domain via sweeping of the second argument."""
        return green_omega_n(z, z1, self)


def green_omega_n(z, z1, slits: SlitSystem):
    """Green's function of Omega_n = Omega_0 minus the slit."""
    z = np.asarray(z, dtype=complex)
    z1 = complex(z1)
    if np.any(np.abs(z - z1) < 1e-14):
        raise ValueError("coincident arguments: logarithmic pole")
    nu = slits.measure_for(z1)
    out = green_omega0(z, z1) - nu.potential(z)
    return out if np.ndim(out) else float(out)


def s_n_eval(z, slits: SlitSystem):
    """The normalized square-root factor of the explicit solution.

    s^2 = (z0^2 - 1)/(z0^2 - x^2) * (z^2 - x^2)/(z^2 - 1) with s(z0) = 1;
    realized by single-valued branches cut along the slit and the rays.
    """
    z = np.asarray(z, dtype=complex)
    x = slits.x_n
    t = slits.geom.t
    for bp in (x, -x, 1.0, -1.0):
        if np.any(np.abs(z - bp) < 1e-12):
            raise ValueError(f"branch point at z={bp}")
    K = (1.0 + t * t) / (t * t + x * x)
    s = math.sqrt(K) * z * np.sqrt(1.0 - (x * x) / (z * z)) / (1j * np.sqrt(1.0 - z * z))
    return s if s.ndim else complex(s)


# ---------------------------------------------------------------------------
# continuous log branches along paths
# ---------------------------------------------------------------------------

class _PhaseWalker:
    """Continues log b_0(z, p) jointly for the quadrature nodes and the poles.

    The walk starts at the base point i with principal logs and advances along
    straight segments, bisecting adaptively so no component winds more than a
    half turn per step.  Callers must keep every segment inside the slit
    domain (crossing the real axis only through the gaps).
    """

    _BASE = 1j
    _MAX_DEPTH = 64

    def __init__(self, slits: SlitSystem, extra_poles=()):
        self.slits = slits
        first = slits.measures[slits.poles[0][0]]
        pole_pts = [p for p, _ in slits.poles] + [complex(p) for p in extra_poles]
        self.n_nodes = len(first.nodes)
        self.points = np.concatenate([first.nodes.astype(complex), np.array(pole_pts)])
        self.w_points = w_of_z(self.points)
        self.z = self._BASE
        self.vals = self._b_vals(self.z)
        if np.any(np.abs(self.vals) < 1e-300):
            raise BranchTrackingError("base point collides with a zero of b_0")
        self.logs = np.log(self.vals)
        self._pole_index = {p: self.n_nodes + i for i, p in enumerate(pole_pts)}

    def _b_vals(self, z):
        w = w_of_z(complex(z))
        return (w - self.w_points) / (w - np.conj(self.w_points))

    def _advance_segment(self, z_new, depth=0):
        vals_new = self._b_vals(z_new)
        ratios = vals_new / self.vals
        d = np.log(ratios)
        if np.all(np.isfinite(d)) and np.max(np.abs(d.imag)) < 1.2:
            self.logs = self.logs + d
            self.vals = vals_new
            self.z = complex(z_new)
            return
        if depth >= self._MAX_DEPTH:
            raise BranchTrackingError(f"phase step rejected near z={z_new!r}")
        mid = 0.5 * (self.z + z_new)
        self._advance_segment(mid, depth + 1)
        self._advance_segment(z_new, depth + 1)

    def goto(self, z, via=()):
        for wp in via:
            self._advance_segment(wp)
        self._advance_segment(z)

    def log_b_pole(self, pole: complex) -> complex:
        """Continued log b_{Omega_n}(z, pole) at the current position.

        The sweeping identity subtracts the slit potential from the ambient
        one, so the node logs enter with a minus sign; their real part turns
        -g_0(z, t) into +g_0(z, t) inside the integral.
        """
        nu = self.slits.measures.get(pole) or self.slits.measure_for(pole)
        idx = self._pole_index[complex(pole)]
        return complex(self.logs[idx] - self.logs[: self.n_nodes] @ nu.weights)

    def log_product(self) -> complex:
        """Continued log of the full Blaschke product over the pole multiset."""
        return sum(mult * self.log_b_pole(p) for p, mult in self.slits.poles)


def _default_path(z: complex, x: float):
    """Waypoints from the base point i to z, crossing R only through a gap."""
    z = complex(z)
    if z.imag >= 0.0:
        return (z,)
    gap = 0.5 * (x + 1.0)
    eps = min(0.25, 0.25 * (1.0 - x))
    return (complex(gap, eps), complex(gap, -eps), z)


def complex_green_omega_n(z, z1, slits: SlitSystem, path=None):
    """b of the slit domain with a continuously tracked phase.

    Single-valued only in the integer-power combinations of the explicit
    solution; the branch returned here is the continuation along ``path``
    (default: a polyline through the right gap) from the base point i.
    """
    z1 = complex(z1)
    walker = _PhaseWalker(slits, extra_poles=() if z1 in slits.measures else (z1,))
    z = complex(z)
    via = tuple(path) if path is not None else _default_path(z, slits.x_n)[:-1]
    walker.goto(z, via=via)
    return cmath.exp(walker.log_b_pole(z1))


# ---------------------------------------------------------------------------
# the explicit extremal polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QnResult:
    """Assembled extremal polynomial and its certificates."""

    coeffs: ComplexPoly        # degree <= n polynomial in the Z chart
    pullback: ComplexPoly      # the arc-chart polynomial Q(z(u))/E_n(z(u))
    attained: float            # value of |Q| at z0
    sup_check: float           # refined sup of |Q/E_n| over the boundary rays
    phase: float               # relative phase resolved by the circle fit
    fit_residual: float        # largest invalid Fourier coefficient / scale
    holdout_residual: float    # held-out validation error / scale

    @property
    def degree(self) -> int:
        return self.coeffs.degree


def _poly_from_roots(roots_mults) -> np.ndarray:
    c = np.array([1.0 + 0.0j])
    for r, mult in roots_mults:
        for _ in range(mult):
            c = np.convolve(c, np.array([-r, 1.0 + 0.0j]))
    return c


def _polyval(c: np.ndarray, z):
    return np.polynomial.polynomial.polyval(z, c)


def _fourier_coeffs(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fourier coefficients on the offset angle grid theta_j = 2 pi (j+1/2)/M."""
    M = len(samples)
    ks = np.fft.fftfreq(M, d=1.0 / M)
    g = np.fft.fft(samples) / M * np.exp(-1j * math.pi * ks / M)
    return ks.astype(int), g


def build_qn(slits: SlitSystem, fit_radius: float = 3.0, tol_cert: float = 1e-7) -> QnResult:
    """Assemble, certify and normalize the explicit extremal polynomial.

    Evaluates both analytic branches of the closed-form solution on a circle
    in the Z chart, resolves the relative unimodular factor from the
    requirement that the combination has no Fourier content outside degrees
    0..n, and validates the fitted coefficients against held-out samples.
    """
    n = slits.n
    geom = slits.geom
    R = fit_radius
    if abs(R - geom.t) < 0.5:
        R = geom.t + 2.0

    M1 = 8 * (n + 1)
    theta = 2.0 * math.pi * (np.arange(M1) + 0.5) / M1
    zc = R * np.exp(1j * theta)

    en = _poly_from_roots(slits.zeros)
    en_bar = _poly_from_roots([(np.conj(r), mult) for r, mult in slits.zeros])

    def branch_values(points):
        """(A, C) with Q = A e^{-i psi} + C e^{i psi} for the right psi."""
        pts = np.asarray(points)
        upper = [i for i in range(len(pts)) if pts[i].imag > 0.0]
        lower = [i for i in range(len(pts)) if pts[i].imag <= 0.0]
        logI = np.empty(len(pts), dtype=complex)
        for group, lower_half in ((upper, False), (lower, True)):
            if not group:
                continue
            walker = _PhaseWalker(slits)
            first = complex(pts[group[0]])
            via = _default_path(first, slits.x_n)[:-1] if lower_half else ()
            walker.goto(first, via=via)
            logI[group[0]] = walker.log_product()
            for i in group[1:]:
                walker.goto(complex(pts[i]))
                logI[i] = walker.log_product()
        s = s_n_eval(pts, slits)
        r = (pts - geom.z0) / (pts - geom.z_inf)
        A = _polyval(en, pts) * (1.0 + s) / (2.0 * s) * np.exp(-logI)
        C = _polyval(en_bar, pts) * (1.0 - s) / (2.0 * s) * r * np.exp(logI)
        return A, C

    A, C = branch_values(zc)

    ks, a_hat = _fourier_coeffs(A)
    _, c_hat = _fourier_coeffs(C)
    invalid = (ks < 0) | (ks > n)
    S = np.vdot(a_hat[invalid], c_hat[invalid])  # sum conj(a_k) c_k
    if abs(S) < 1e-14 * max(1.0, float(np.sum(np.abs(c_hat[invalid]) ** 2))):
        raise BranchTrackingError("cannot resolve the relative phase: no invalid-index content")
    psi = 0.5 * cmath.phase(-np.conj(S) / abs(S))
    e_m, e_p = cmath.exp(-1j * psi), cmath.exp(1j * psi)

    q_samples = A * e_m + C * e_p
    scale = float(np.max(np.abs(q_samples)))
    q_hat = a_hat * e_m + c_hat * e_p
    fit_residual = float(np.max(np.abs(q_hat[invalid]))) / scale
    valid_ks = np.arange(n + 1)
    q = np.array([q_hat[ks == k][0] for k in valid_ks]) / R ** valid_ks.astype(float)

    # held-out validation on a disjoint angle grid
    M2 = 4 * (n + 1)
    theta2 = 2.0 * math.pi * (np.arange(M2) + 0.25) / M2
    zc2 = R * np.exp(1j * theta2)
    A2, C2 = branch_values(zc2)
    direct = A2 * e_m + C2 * e_p
    holdout_residual = float(np.max(np.abs(_polyval(q, zc2) - direct))) / scale
    if fit_residual > tol_cert or holdout_residual > tol_cert:
        raise BranchTrackingError(
            "assembled expression failed the polynomial certificate: "
            f"fit residual {fit_residual:.3e}, held-out residual {holdout_residual:.3e}"
        )

    # pull back to the arc chart through the unit circle
    Mu = max(4 * (n + 1), 8)
    thu = 2.0 * math.pi * (np.arange(Mu) + 0.5) / Mu
    uj = np.exp(1j * thu)
    zj = (geom.z_inf * uj - geom.z0) / (uj - 1.0)
    p_samples = _polyval(q, zj) / _polyval(en, zj)
    ksu, p_hat = _fourier_coeffs(p_samples)
    p = np.array([p_hat[ksu == k][0] for k in range(n + 1)])

    # global unimodular normalization: b(0, inf)^n P(0) real positive
    b0n = complex(b_omega_alpha(0.0, complex(math.inf, 0.0), geom)) ** n
    omega = b0n * p[0]
    rot = np.conj(omega) / abs(omega) if omega != 0.0 else 1.0
    p = p * rot
    q = q * rot

    # certificates at the special point and on the boundary rays
    attained = abs(complex(_polyval(q, geom.z0)))
    sup_check = _sup_on_rays(q, en, geom, n)

    return QnResult(
        coeffs=ComplexPoly(q),
        pullback=ComplexPoly(p),
        attained=attained,
        sup_check=sup_check,
        phase=psi,
        fit_residual=fit_residual,
        holdout_residual=holdout_residual,
    )


def _sup_on_rays(q: np.ndarray, en: np.ndarray, geom: ArcGeometry, n: int, grid: int = 1024) -> float:
    """Refined sup of |Q/E_n| over the boundary rays (arc-chart sampling)."""

    def ratio(th):
        th = np.asarray(th, dtype=float)
        u = np.exp(1j * th)
        z = (geom.z_inf * u - geom.z0) / (u - 1.0)
        return np.abs(_polyval(q, z) / _polyval(en, z))

    # cluster toward the arc endpoints; avoid theta = 0 exactly (z = infinity)
    base = geom.alpha * np.cos(math.pi * (np.arange(grid) + 0.5) / grid)
    base = base[np.abs(base) > 1e-9]
    vals = ratio(base)
    best = float(abs(q[n]))  # value at infinity: |Q/E_n| -> |leading coefficient|
    order = np.argsort(base)
    th_s, v_s = base[order], vals[order]
    for i in range(len(th_s)):
        if 0 < i < len(th_s) - 1 and not (v_s[i] >= v_s[i - 1] and v_s[i] >= v_s[i + 1]):
            continue
        lo = th_s[max(i - 1, 0)]
        hi = th_s[min(i + 1, len(th_s) - 1)]
        best = max(best, _golden_max(ratio, lo, hi))
    return best


def _golden_max(f, lo: float, hi: float, iters: int = 40) -> float:
    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = float(f(c)), float(f(d))
    for _ in range(iters):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = float(f(d))
        else:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = float(f(c))
    return max(fc, fd)
