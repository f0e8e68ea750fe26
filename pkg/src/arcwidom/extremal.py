"""Independent numerical solver for the primal arc problem.

``solve_extremal`` maximizes ``|P(u0)|`` over polynomials of degree at most
n whose modulus is bounded by one on the arc (``u0 = inf`` asks for the
maximal leading coefficient instead, whose reciprocal is the Chebyshev
norm).  The modulus constraints are outer-approximated by supporting
half-planes ``Re(e^{-i phi} P(e^{i theta})) <= 1`` on a Chebyshev-clustered
angle grid; refinement rounds add cuts exactly at the refined local maxima
of ``|P|`` with the phase of P there, so the cut set densifies only near
the active set.  Each round yields a certified sandwich: the LP optimum is
an upper bound, the cut solution rescaled by its true sup is a feasible
lower bound.

The LP itself is solved by the dense revised simplex in ``_simplex``;
no external optimization packages are used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._simplex import CutLP, LPError
from .conformal import INF, ArcGeometry, arc_distance, b_omega_alpha

__all__ = [
    "ComplexPoly",
    "ExtremalProblem",
    "ExtremalSolution",
    "solve_extremal",
    "solve_envelope_batch",
    "star",
    "chebyshev_norm",
    "envelope_at",
    "arc_angles",
]


class ComplexPoly:
    """Polynomial with complex coefficients in ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, u):
        return np.polynomial.polynomial.polyval(np.asarray(u, dtype=complex), self.coeffs)

    def star(self, n: int | None = None) -> "ComplexPoly":
        """The involution P*(u) = u^n conj(P(1/conj u)): reversed conjugated coefficients."""
        n = self.degree if n is None else int(n)
        c = np.zeros(n + 1, dtype=complex)
        c[: len(self.coeffs)] = self.coeffs
        return ComplexPoly(np.conj(c[::-1]))

    def sup_on(self, pts) -> float:
        return float(np.max(np.abs(self(pts))))

    def __repr__(self) -> str:
        return f"ComplexPoly(degree={self.degree})"


def star(p: ComplexPoly, n: int | None = None) -> ComplexPoly:
    """Module-level alias for :meth:`ComplexPoly.star`."""
    return p.star(n)


def arc_angles(alpha: float, m: int, endpoint: bool = True) -> np.ndarray:
    """Chebyshev-clustered angles on [-alpha, alpha] (dense near the endpoints)."""
    if endpoint:
        return alpha * np.cos(math.pi * np.arange(m) / (m - 1))
    return alpha * np.cos(math.pi * (np.arange(m) + 0.5) / m)


@dataclass(frozen=True)
class ExtremalProblem:
    """Problem data for one solve; grids default to the size floor."""

    geom: ArcGeometry
    n: int
    u0: complex
    arc_grid_size: int = 0
    phase_grid_size: int = 0
    tol: float = 1e-6
    max_rounds: int = 8

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("degree must be nonnegative")
        if not cmath.isinf(complex(self.u0)) and arc_distance(complex(self.u0), self.geom) < 1e-8:
            raise ValueError(f"u0 lies on the closed arc: {self.u0!r}")
        m = self.arc_grid_size or max(8 * (self.n + 1), 32)
        k = self.phase_grid_size or 64
        if m < 8 * (self.n + 1):
            raise ValueError("arc grid must hold at least 8(n+1) points")
        if k < 32:
            raise ValueError("phase grid must hold at least 32 points")
        object.__setattr__(self, "arc_grid_size", m)
        object.__setattr__(self, "phase_grid_size", k)


@dataclass
class ExtremalSolution:
    """Certified solve output (``poly`` is feasible after rescaling)."""

    poly: ComplexPoly
    value: float
    norm_cert: float
    phase: float
    upper_bound: float
    converged: bool
    rounds: int
    n_active_clusters: int = 0
    lp: object = field(default=None, repr=False)


def _cut_rows(thetas: np.ndarray, phis: np.ndarray, n: int) -> np.ndarray:
    """Rows Re(e^{-i phi} P(e^{i theta})) as linear forms in the 2(n+1) reals."""
    ang = np.outer(thetas, np.arange(n + 1)) - phis[:, None]
    rows = np.empty((len(thetas), 2 * (n + 1)))
    rows[:, 0::2] = np.cos(ang)
    rows[:, 1::2] = -np.sin(ang)
    return rows


def _objective(u0: complex, n: int) -> np.ndarray:
    f = np.zeros(2 * (n + 1))
    if cmath.isinf(u0):
        f[2 * n] = 1.0
        return f
    powers = u0 ** np.arange(n + 1)
    f[0::2] = powers.real
    f[1::2] = -powers.imag
    return f


def _coeffs_from(xi: np.ndarray) -> np.ndarray:
    return xi[0::2] + 1j * xi[1::2]


def _refined_maxima(poly: ComplexPoly, alpha: float, m_scan: int, cap: int = 0):
    """Refined local maxima of |P(e^{i theta})| on [-alpha, alpha]."""
    th = np.sort(arc_angles(alpha, m_scan))
    vals = np.abs(poly(np.exp(1j * th)))

    def f(t):
        return abs(complex(poly(cmath.exp(1j * float(t)))))

    out = []
    for i in range(len(th)):
        left = vals[i - 1] if i > 0 else -np.inf
        right = vals[i + 1] if i < len(th) - 1 else -np.inf
        if vals[i] < left or vals[i] < right:
            continue
        if i > 0 and vals[i] == left:  # plateau: keep its first point only
            continue
        lo = th[i - 1] if i > 0 else th[0]
        hi = th[i + 1] if i < len(th) - 1 else th[-1]
        t_star, v_star = _golden_argmax(f, lo, hi)
        out.append((t_star, v_star))
    out.sort(key=lambda tv: -tv[1])
    if cap and len(out) > cap:
        out = out[:cap]
    return out


def _golden_argmax(f, lo: float, hi: float, iters: int = 48):
    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
    return (c, fc) if fc >= fd else (d, fd)


def _raw_value(coeffs: np.ndarray, u0: complex) -> float:
    if cmath.isinf(u0):
        return float(abs(coeffs[-1]))
    return abs(complex(np.polynomial.polynomial.polyval(u0, coeffs)))


def solve_extremal(prob: ExtremalProblem) -> ExtremalSolution:
    """Solve one extremal problem with cut refinement and a feasibility certificate."""
    n, geom, u0 = prob.n, prob.geom, complex(prob.u0)
    f = _objective(u0, n)

    th0 = arc_angles(geom.alpha, prob.arc_grid_size)
    ph0 = 2.0 * math.pi * np.arange(prob.phase_grid_size) / prob.phase_grid_size
    thetas = np.repeat(th0, prob.phase_grid_size)
    phis = np.tile(ph0, len(th0))
    lp = CutLP(_cut_rows(thetas, phis, n), f)

    m_scan = 10 * prob.arc_grid_size
    best_lb, best_coeffs, best_sup = -np.inf, None, 1.0
    ub = np.inf
    converged = False
    rounds = 0
    # phase brackets: wide enough that the bracket rows stay well separated,
    # tight enough that the secant error sec(dphi) - 1 sits below tol
    dphi = max(3e-4, math.sqrt(prob.tol))
    seen_cuts: set[tuple[int, int]] = set()
    for rounds in range(1, prob.max_rounds + 1):
        xi, ub = lp.solve()
        coeffs = _coeffs_from(xi)
        poly = ComplexPoly(coeffs)
        maxima = _refined_maxima(poly, geom.alpha, m_scan, cap=8 * (n + 2))
        sup = max(v for _, v in maxima) if maxima else poly.sup_on(np.exp(1j * np.sort(th0)))
        lb = _raw_value(coeffs, u0) / max(sup, 1e-300)
        if lb > best_lb:
            best_lb, best_coeffs, best_sup = lb, coeffs, sup
        if ub - best_lb <= prob.tol * max(1.0, abs(best_lb)):
            converged = True
            break
        cuts_t, cuts_p = [], []
        for t_star, v_star in maxima:
            if v_star > 1.0 - 10.0 * prob.tol:
                phi = cmath.phase(complex(poly(cmath.exp(1j * t_star))))
                # bracket the active phase so the disc is supported quadratically
                for p in (phi, phi - dphi, phi + dphi):
                    key = (round(t_star / 1e-11), round(p / 1e-11))
                    if key not in seen_cuts:
                        seen_cuts.add(key)
                        cuts_t.append(t_star)
                        cuts_p.append(p)
        if not cuts_t:
            # cut generation exhausted at fp resolution
            converged = ub - best_lb <= 100.0 * prob.tol * max(1.0, abs(best_lb))
            break
        lp.add_rows(_cut_rows(np.asarray(cuts_t), np.asarray(cuts_p), n))

    # final rescale against a certification-grade sup of the chosen iterate
    fine_maxima = _refined_maxima(ComplexPoly(best_coeffs), geom.alpha, 4 * m_scan)
    sup_fine = max((v for _, v in fine_maxima), default=best_sup)
    coeffs = best_coeffs / max(sup_fine, best_sup)
    poly = ComplexPoly(coeffs)

    # feasibility certificate on an offset validation grid, 10x finer
    th_val = geom.alpha * np.cos(math.pi * (np.arange(10 * m_scan) + 0.37) / (10 * m_scan))
    cert_maxima = _refined_maxima(poly, geom.alpha, 2 * m_scan)
    norm_cert = max(
        float(np.max(np.abs(poly(np.exp(1j * th_val))))),
        max((v for _, v in cert_maxima), default=0.0),
    )
    if norm_cert > 1.0:  # fold any certificate excess back into the rescale
        coeffs = coeffs / norm_cert
        poly = ComplexPoly(coeffs)
        norm_cert = 1.0

    value = _raw_value(coeffs, u0)
    # unimodular normalization: b(u0, inf)^n P(u0) real positive
    if cmath.isinf(u0):
        omega = complex(coeffs[-1])
    else:
        omega = complex(b_omega_alpha(u0, INF, geom)) ** n * complex(
            np.polynomial.polynomial.polyval(u0, coeffs)
        )
    rot = np.conj(omega) / abs(omega) if omega != 0.0 else 1.0
    poly = ComplexPoly(coeffs * rot)

    n_active = _count_clusters(poly, geom.alpha, m_scan, 1.0 - 10.0 * prob.tol)
    return ExtremalSolution(
        poly=poly,
        value=value,
        norm_cert=norm_cert,
        phase=float(cmath.phase(rot)),
        upper_bound=ub,
        converged=converged,
        rounds=rounds,
        n_active_clusters=n_active,
        lp=lp,
    )


def _count_clusters(poly: ComplexPoly, alpha: float, m_scan: int, level: float) -> int:
    th = np.sort(arc_angles(alpha, m_scan))
    hot = np.abs(poly(np.exp(1j * th))) > level
    return int(np.sum(hot[1:] & ~hot[:-1]) + (1 if hot[0] else 0))


def solve_envelope_batch(prob: ExtremalProblem, u0_list) -> list[float]:
    """Envelope values at many points, sharing one refined cut set.

    The cut set is refined for the anchor problem ``prob``; each subsequent
    point reuses it with a warm dual-simplex restart and its own rescale,
    so every returned value is a certified feasible lower bound.
    """
    anchor = solve_extremal(prob)
    lp: CutLP = anchor.lp
    n, alpha = prob.n, prob.geom.alpha
    m_scan = 6 * prob.arc_grid_size
    out = []
    for u0 in u0_list:
        u0 = complex(u0)
        try:
            xi, _ = lp.reoptimize(_objective(u0, n))
        except LPError:
            sol = solve_extremal(
                ExtremalProblem(prob.geom, n, u0, prob.arc_grid_size,
                                prob.phase_grid_size, prob.tol, prob.max_rounds)
            )
            out.append(sol.value)
            continue
        coeffs = _coeffs_from(xi)
        maxima = _refined_maxima(ComplexPoly(coeffs), alpha, m_scan)
        sup = max(v for _, v in maxima)
        out.append(_raw_value(coeffs, u0) / max(sup, 1e-300))
    return out


def chebyshev_norm(n: int, geom: ArcGeometry, tol: float = 1e-8, max_rounds: int = 12) -> float:
    """Sup norm of the monic Chebyshev polynomial: 1 / (envelope at the origin)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    sol = solve_extremal(ExtremalProblem(geom, n, 0.0, tol=tol, max_rounds=max_rounds))
    return 1.0 / sol.value


def envelope_at(u: complex, n: int, geom: ArcGeometry, tol: float = 1e-6, max_rounds: int = 8) -> float:
    """Envelope value L_n(u) = sup |P(u)| over the unit-ball polynomial class."""
    sol = solve_extremal(ExtremalProblem(geom, n, complex(u), tol=tol, max_rounds=max_rounds))
    return sol.value
