"""Closed-form conformal charts for the circular-arc domain.

The arc of half-angle ``alpha`` is ``A_alpha = {e^{it}: |t| <= alpha}`` with
``0 < alpha < pi``; its complement on the sphere is the domain carrying the
extremal problems.  Four charts are used throughout the package:

``U``
    the arc complement itself (points named ``u``),
``Z``
    the two-slit model ``Omega_0 = (C \\ R) u (-1, 1)`` whose boundary
    ``A_0 = R \\ (-1, 1)`` is a pair of real rays joined through infinity,
``W``
    the open upper half-plane,
``LAMBDA``
    the sector ``Pi = {|arg| <= pi/4}``.

The maps are

    u(z)      = (z - z0) / (z - conj z0),      z0 = i tan(alpha/2),
    w(z)      = sqrt((z - 1)/(z + 1)),         branch with w(0) = i,
    lambda(u) = ((u e^{ia} - 1)/(u - e^{ia}))^{1/4},   branch into Pi,

so that u(-1) = e^{i alpha}, u(+1) = e^{-i alpha}, u(z0) = 0 and
u(conj z0) = infinity.  The point at infinity is first class in the U and Z
charts and every Moebius map handles it by its limit value.

Green's functions are transported through the charts from the half-plane
formula ``g(w, w1) = log|w - conj w1| - log|w - w1|``.  The complex Green's
function of the arc complement with pole at infinity carries the unimodular
factor that makes ``lim u b(u, inf)`` real and positive; that limit is the
logarithmic capacity ``sin(alpha/2)`` of the arc.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "INF",
    "ArcGeometry",
    "Chart",
    "ChartPoint",
    "ChartError",
    "DomainBoundaryError",
    "SymmetryCircle",
    "u_from_z",
    "z_from_u",
    "w_from_z",
    "lambda_from_u",
    "blaschke_halfplane",
    "green_halfplane",
    "green_omega0",
    "b_omega0",
    "green_omega_alpha",
    "b_omega_alpha",
    "symmetry_circle",
    "u_of_z",
    "z_of_u",
    "w_of_z",
    "lam_of_u",
    "arc_distance",
]

#: Point at infinity for the U and Z charts.
INF = complex(math.inf, 0.0)

_LOG2 = math.log(2.0)


class ChartError(ValueError):
    """A point was passed in the wrong chart."""


class DomainBoundaryError(ValueError):
    """A point lies on (or too close to) the boundary slits."""


class Chart(Enum):
    U = "u"
    Z = "z"
    W = "w"
    LAMBDA = "lambda"


@dataclass(frozen=True)
class ChartPoint:
    """A complex value tagged with the chart it lives in.

    The tag prevents silently mixing coordinates of different charts; the
    typed map wrappers reject points carrying the wrong tag.
    """

    chart: Chart
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if self.chart is Chart.W:
            if not cmath.isinf(v) and v.imag < -1e-12:
                raise ChartError(f"W-chart point must lie in the closed upper half-plane: {v!r}")
        elif self.chart is Chart.LAMBDA:
            if cmath.isinf(v) or abs(cmath.phase(v)) > 0.25 * math.pi + 1e-12:
                raise ChartError(f"LAMBDA-chart point must lie in the sector |arg| <= pi/4: {v!r}")


def _expect(p: ChartPoint, chart: Chart) -> complex:
    if not isinstance(p, ChartPoint):
        raise ChartError(f"expected a ChartPoint in chart {chart}, got {type(p).__name__}")
    if p.chart is not chart:
        raise ChartError(f"expected chart {chart}, got {p.chart}")
    return complex(p.value)


@dataclass(frozen=True)
class ArcGeometry:
    """Arc half-angle with the derived chart constants."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha < math.pi):
            raise ValueError(f"alpha must lie in the open interval (0, pi), got {self.alpha}")

    @property
    def t(self) -> float:
        """tan(alpha/2); the height of z0 on the imaginary axis."""
        return math.tan(0.5 * self.alpha)

    @property
    def z0(self) -> complex:
        return complex(0.0, self.t)

    @property
    def z_inf(self) -> complex:
        """Image of infinity in the Z chart; the conjugate of z0."""
        return complex(0.0, -self.t)

    @property
    def w0(self) -> complex:
        """w(z0) = e^{i(pi - alpha)/2}, a unimodular upper half-plane point."""
        return cmath.exp(0.5j * (math.pi - self.alpha))

    @property
    def cap(self) -> float:
        """Logarithmic capacity of the arc.

        Transporting the half-plane Green's function through the chart chain
        gives ``lim |u b(u, inf)| = |z0 - conj z0| |w'(z_inf)| / |2 Im w(z_inf)|``
        which collapses to ``sin(alpha/2)``.
        """
        return math.sin(0.5 * self.alpha)


# ---------------------------------------------------------------------------
# raw vectorized chart maps (complex scalars or ndarrays)
# ---------------------------------------------------------------------------

def u_of_z(z, geom: ArcGeometry):
    """Moebius map Z -> U; z = z_inf maps to the point at infinity."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = (z - geom.z0) / (z - geom.z_inf)
    u = np.where(np.isinf(z), 1.0 + 0.0j, u)
    u = np.where(z == geom.z_inf, INF, u)
    return u if u.ndim else complex(u)


def z_of_u(u, geom: ArcGeometry):
    """Inverse Moebius map U -> Z; u = infinity maps to z_inf, u = 1 to infinity."""
    u = np.asarray(u, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (geom.z_inf * u - geom.z0) / (u - 1.0)
    z = np.where(np.isinf(u), geom.z_inf, z)
    z = np.where(u == 1.0, INF, z)
    return z if z.ndim else complex(z)


def w_of_z(z):
    """Square-root map Z -> W with w(0) = i.

    Implemented as ``i sqrt((1 - z)/(1 + z))`` with the principal square
    root: the argument avoids the cut exactly when z avoids A_0, so the
    branch is single-valued on the whole Z chart.
    """
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = 1j * np.sqrt((1.0 - z) / (1.0 + z))
    return w if w.ndim else complex(w)


def lam_of_u(u, geom: ArcGeometry):
    """Quarter-root map U -> LAMBDA (the sector |arg| <= pi/4).

    The Moebius ratio ``(u e^{ia} - 1)/(u - e^{ia})`` sends the arc onto the
    negative real axis and its complement onto the positive one, so the
    principal quarter power lands in the open sector.
    """
    u = np.asarray(u, dtype=complex)
    ea = cmath.exp(1j * geom.alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        m = (u * ea - 1.0) / (u - ea)
    m = np.where(np.isinf(u), ea, m)
    lam = np.exp(0.25 * np.log(m))
    return lam if lam.ndim else complex(lam)


# ---------------------------------------------------------------------------
# half-plane Green's data
# ---------------------------------------------------------------------------

def blaschke_halfplane(w, w1):
    """b(w, w1) = (w - w1)/(w - conj w1) for the upper half-plane."""
    w = np.asarray(w, dtype=complex)
    w1 = np.asarray(w1, dtype=complex)
    if np.any(w == np.conj(w1)):
        raise ZeroDivisionError("pole collision: w equals conj(w1)")
    out = (w - w1) / (w - np.conj(w1))
    return out if out.ndim else complex(out)


def green_halfplane(w, w1):
    """g(w, w1) = -log|b(w, w1)| for the upper half-plane."""
    w = np.asarray(w, dtype=complex)
    w1 = np.asarray(w1, dtype=complex)
    out = np.log(np.abs(w - np.conj(w1))) - np.log(np.abs(w - w1))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Omega_0 and Omega_alpha Green's data (chart transport)
# ---------------------------------------------------------------------------

def green_omega0(z, z1):
    """Green's function of the Z chart domain, transported through w."""
    return green_halfplane(w_of_z(z), w_of_z(z1))


def b_omega0(z, z1):
    """Complex Green's function of the Z chart domain (chart-composed phase)."""
    return blaschke_halfplane(w_of_z(z), w_of_z(z1))


def _w_at_z_inf(geom: ArcGeometry) -> complex:
    # w(conj z0) = -conj(w0); the branch value in the upper half-plane.
    return -np.conj(geom.w0)


def green_omega_alpha(u, u1, geom: ArcGeometry):
    """Green's function of the arc complement; u1 may be the point at infinity."""
    u = np.asarray(u, dtype=complex)
    w = w_of_z(z_of_u(u, geom))
    if np.ndim(u1) == 0 and cmath.isinf(complex(u1)):
        w1 = _w_at_z_inf(geom)
    else:
        w1 = w_of_z(z_of_u(u1, geom))
    return green_halfplane(w, w1)


def b_omega_alpha(u, u1, geom: ArcGeometry):
    """Complex Green's function of the arc complement.

    For a pole at infinity the phase is fixed so that ``lim u b(u, inf)``
    is real and positive (it equals the capacity).  For finite poles the
    chart-composed phase is returned.
    """
    u = np.asarray(u, dtype=complex)
    w = w_of_z(z_of_u(u, geom))
    if np.ndim(u1) == 0 and cmath.isinf(complex(u1)):
        phase = cmath.exp(-0.5j * (geom.alpha + math.pi))
        out = phase * (w + np.conj(geom.w0)) / (w + geom.w0)
        return out if out.ndim else complex(out)
    w1 = w_of_z(z_of_u(u1, geom))
    return blaschke_halfplane(w, w1)


# ---------------------------------------------------------------------------
# typed wrappers
# ---------------------------------------------------------------------------

def u_from_z(z: ChartPoint, geom: ArcGeometry) -> ChartPoint:
    """Map a Z-chart point to the U chart."""
    zv = _expect(z, Chart.Z)
    return ChartPoint(Chart.U, u_of_z(zv, geom))


def z_from_u(u: ChartPoint, geom: ArcGeometry) -> ChartPoint:
    """Map a U-chart point to the Z chart."""
    uv = _expect(u, Chart.U)
    return ChartPoint(Chart.Z, z_of_u(uv, geom))


def w_from_z(z: ChartPoint) -> ChartPoint:
    """Map a Z-chart point to the upper half-plane; rejects points on A_0."""
    zv = _expect(z, Chart.Z)
    if cmath.isinf(zv) or (zv.imag == 0.0 and abs(zv.real) >= 1.0):
        raise DomainBoundaryError(f"point lies on the boundary rays A_0: {zv!r}")
    return ChartPoint(Chart.W, w_of_z(zv))


def lambda_from_u(u: ChartPoint, geom: ArcGeometry) -> ChartPoint:
    """Map a U-chart point to the sector; rejects the arc endpoints."""
    uv = _expect(u, Chart.U)
    for end in (cmath.exp(1j * geom.alpha), cmath.exp(-1j * geom.alpha)):
        if not cmath.isinf(uv) and abs(uv - end) < 1e-14:
            raise DomainBoundaryError(f"arc endpoint is a branch point of lambda: {uv!r}")
    return ChartPoint(Chart.LAMBDA, lam_of_u(uv, geom))


# ---------------------------------------------------------------------------
# the reflection circle through z_u0 and conj(z_u0)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryCircle:
    """The unique circle through ``z_u0`` and its conjugate for which the
    Z-chart domain is reflection symmetric.

    The degenerate branch (``Re z_u0 = 0``) is the imaginary axis; it is
    encoded with ``degenerate=True``, infinite radius and ``x0 = 0``.
    """

    center: float
    radius: float
    x0: float
    degenerate: bool = False

    def reflect(self, z):
        """Reflection through the circle; swaps -1 and +1 and fixes x0."""
        z = np.asarray(z, dtype=complex)
        if self.degenerate:
            out = -np.conj(z)
        else:
            out = self.center + self.radius**2 / (np.conj(z) - self.center)
        return out if out.ndim else complex(out)


def symmetry_circle(z_u0: complex) -> SymmetryCircle:
    """Build the reflection circle for an anchor point ``z_u0`` of the Z chart."""
    z_u0 = complex(z_u0)
    re = z_u0.real
    if re == 0.0:
        return SymmetryCircle(center=0.0, radius=math.inf, x0=0.0, degenerate=True)
    c = (abs(z_u0) ** 2 + 1.0) / (2.0 * re)
    if abs(c) <= 1.0:
        # impossible for an interior anchor off the axis; flags bad input
        raise ValueError(f"anchor {z_u0!r} does not lie in the Z-chart domain")
    r = math.sqrt(c * c - 1.0)
    x0 = c - math.copysign(r, c)
    return SymmetryCircle(center=c, radius=r, x0=x0)


# ---------------------------------------------------------------------------
# misc helpers
# ---------------------------------------------------------------------------

def arc_distance(u, geom: ArcGeometry):
    """Euclidean distance from points u to the closed arc A_alpha."""
    u = np.asarray(u, dtype=complex)
    theta = np.angle(u)
    on_span = np.abs(theta) <= geom.alpha
    d_radial = np.abs(np.abs(u) - 1.0)
    d_ends = np.minimum(
        np.abs(u - cmath.exp(1j * geom.alpha)),
        np.abs(u - cmath.exp(-1j * geom.alpha)),
    )
    out = np.where(on_span, d_radial, d_ends)
    return out if out.ndim else float(out)
