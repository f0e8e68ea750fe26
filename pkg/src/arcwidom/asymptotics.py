"""Closed-form limit objects of the arc extremal problems.

For the anchor ``u0`` the scaled extremal polynomials converge to an
explicit analytic function on the arc complement; three equivalent closed
forms are provided (sector, slit-chart and half-plane variables), the
upper-envelope limit is the diagonal of the half-plane reproducing kernel

    k(u, u0) = 2 lambda conj(lambda0) / (lambda + conj(lambda0))^2,

and the Chebyshev norm obeys  ||T_n|| ~ cot(alpha/4) cap^{n+1}.

Branch conventions: the sector form is assembled from lambda = m^{1/4}
with the principal quarter power of the Moebius ratio m (which lands in
the sector), and the slit-chart square-root factor uses single-valued
branches cut along the boundary rays; both normalizations anchor the
factor to one at the anchor point.

In the sector variables the limit reads

    (1/2) (1 + h/h0) (l^2 - |l0|^2)/(l^2 + |l0|^2) (l^2 + l0^2)/(l^2 - conj(l0)^2)

with h(l, l0) = l^2 / ((l^2 - |l0|^2)(l^2 + |l0|^2)).  The sign in the
last denominator is forced by the half-plane form (third factor
(w + w0)/(w + conj w0) with w = i l^2) and by the diagonal evaluation,
which must reproduce the kernel 2|l0|^2/|l0 + conj l0|^2.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .conformal import (
    INF,
    ArcGeometry,
    b_omega0,
    green_omega0,
    lam_of_u,
    symmetry_circle,
    w_of_z,
    z_of_u,
)

__all__ = [
    "LimitFunction",
    "limit_P_u0",
    "limit_P_infty",
    "limit_general_u0_zchart",
    "limit_w_chart",
    "kernel_k",
    "envelope_limit",
    "thiran_detaille_norm",
]

_SING_TOL = 1e-8


class SingularLocusError(ValueError):
    """Evaluation requested on (or too close to) a zero/pole of a factor."""


def kernel_k(u, u0, geom: ArcGeometry):
    """Reproducing kernel 2 l conj(l0) / (l + conj l0)^2 in sector variables."""
    lam = lam_of_u(u, geom)
    lam0 = lam_of_u(complex(u0), geom)
    den = lam + np.conj(lam0)
    # both factors have positive real part inside the sector
    if np.any(np.real(lam) < -1e-14) or lam0.real < -1e-14:
        raise SingularLocusError("sector points must have nonnegative real part")
    out = 2.0 * lam * np.conj(lam0) / (den * den)
    return out if np.ndim(out) else complex(out)


def _raw_sector(u, u0, geom: ArcGeometry):
    lam = np.asarray(lam_of_u(u, geom))
    lam0 = complex(lam_of_u(complex(u0), geom))
    l2 = lam * lam
    a0 = abs(lam0) ** 2
    l02 = lam0 * lam0
    l02c = np.conj(lam0) ** 2
    for locus, name in (
        (l2 - a0, "lambda^2 = |lambda0|^2"),
        (l2 + a0, "lambda^2 = -|lambda0|^2"),
        (l2 - l02c, "lambda^2 = conj(lambda0)^2"),
    ):
        if np.any(np.abs(locus) < _SING_TOL):
            raise SingularLocusError(f"singular locus {name}")
    h = l2 / ((l2 - a0) * (l2 + a0))
    h0 = l02 / ((l02 - a0) * (l02 + a0))
    return 0.5 * (1.0 + h / h0) * ((l2 - a0) / (l2 + a0)) * ((l2 + l02) / (l2 - l02c))


def _raw_wchart(u, u0, geom: ArcGeometry):
    w = np.asarray(w_of_z(z_of_u(u, geom)))
    w0 = complex(w_of_z(z_of_u(complex(u0), geom)))
    r = abs(w0)
    for locus, name in (
        (w - 1j * r, "w = i|w0|"),
        (w + 1j * r, "w = -i|w0|"),
        (w + np.conj(w0), "w = -conj(w0)"),
    ):
        if np.any(np.abs(locus) < _SING_TOL):
            raise SingularLocusError(f"singular locus {name}")
    v = w / ((w + 1j * r) * (w - 1j * r))
    v0 = w0 / ((w0 + 1j * r) * (w0 - 1j * r))
    return (
        0.5 * (1.0 + v / v0)
        * ((w - 1j * r) / (w + 1j * r))
        * ((w + w0) / (w + np.conj(w0)))
    )


def _raw_zchart_general(u, u0, geom: ArcGeometry):
    z = np.asarray(z_of_u(u, geom))
    zu0 = complex(z_of_u(complex(u0), geom))
    x0 = symmetry_circle(zu0).x0
    if np.any(np.abs(z - np.conj(zu0)) < _SING_TOL):
        raise SingularLocusError("z = conj(z_u0)")
    for bp in (1.0, -1.0, x0):
        if np.any(np.abs(z - bp) < _SING_TOL):
            raise SingularLocusError(f"z = {bp}")
    # single-valued normalized square-root factor, cut along the rays
    s = (z - x0) * np.sqrt(1.0 - zu0 * zu0) / ((zu0 - x0) * np.sqrt(1.0 - z * z))
    return (1.0 + s) / (2.0 * s) * b_omega0(z, x0) / b_omega0(z, np.conj(zu0))


def _raw_zchart_origin(u, geom: ArcGeometry):
    """Limit of the scaled origin-anchored polynomials; removable point at z_inf."""
    z = np.asarray(z_of_u(u, geom), dtype=complex)
    t = geom.t
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    for bp in (0.0, 1.0, -1.0):
        if np.any(np.abs(z - bp) < _SING_TOL):
            raise SingularLocusError(f"z = {bp}")
    out = np.empty_like(z)
    near = np.abs(z - geom.z_inf) < 1e-6
    reg = ~near
    if np.any(reg):
        zr = z[reg]
        s = -1j * math.sqrt(1.0 + t * t) / t * zr / np.sqrt(1.0 - zr * zr)
        out[reg] = (1.0 + s) / (2.0 * s) * b_omega0(zr, 0.0) / b_omega0(zr, geom.z_inf)
    if np.any(near):
        # both (1 + s) and b(z, z_inf) vanish at z_inf; take the ratio of
        # derivatives: s'(z_inf) = -i / (t (1 + t^2)),
        # b'(z_inf) = w'(z_inf) / (2 i cos(alpha/2))
        ca = math.cos(0.5 * geom.alpha)
        w_prime = ca * ca * cmath.exp(0.5j * (geom.alpha - math.pi))
        b_prime = w_prime / (2j * ca)
        s_prime = -1j / (t * (1.0 + t * t))
        out[near] = (-s_prime / (2.0 * b_prime)) * np.asarray(b_omega0(z[near], 0.0))
    return out[0] if scalar else out


_FORMS = {
    "sector": lambda u, u0, geom: _raw_sector(u, u0, geom),
    "zchart": lambda u, u0, geom: _raw_zchart_general(u, u0, geom),
    "wchart": lambda u, u0, geom: _raw_wchart(u, u0, geom),
}


class LimitFunction:
    """Normalized limit of the scaled extremal polynomials anchored at u0.

    The unimodular factor left free by the normalization convention is
    resolved so the value at the anchor is real positive; ``raw`` exposes
    the unrotated evaluation.
    """

    def __init__(self, geom: ArcGeometry, u0: complex, form: str = "sector"):
        u0 = complex(u0)
        if not cmath.isinf(u0) and abs(u0) >= 1.0 - 1e-14:
            raise ValueError("anchor must lie inside the unit disc (use the star symmetry outside)")
        self.geom = geom
        self.u0 = u0
        self.form = form
        self._eval = _FORMS[form]
        anchor = complex(self._eval(u0, u0, geom))
        if anchor == 0.0 or not np.isfinite(anchor):
            raise SingularLocusError("anchor evaluation failed")
        self.phase = -cmath.phase(anchor)

    def raw(self, u):
        return self._eval(u, self.u0, self.geom)

    def __call__(self, u):
        return cmath.exp(1j * self.phase) * np.asarray(self.raw(u))


def limit_P_u0(u, u0, geom: ArcGeometry, form: str = "sector"):
    """Limit of b(u, inf)^n P_{n, u0}(u), normalized positive at the anchor."""
    lf = LimitFunction(geom, u0, form=form)
    out = lf(u)
    return out if np.ndim(out) else complex(out)


def limit_general_u0_zchart(u, u0, geom: ArcGeometry):
    """Slit-chart form of :func:`limit_P_u0` (reflection-circle anchor)."""
    return limit_P_u0(u, u0, geom, form="zchart")


def limit_w_chart(u, u0, geom: ArcGeometry):
    """Half-plane form of :func:`limit_P_u0`."""
    return limit_P_u0(u, u0, geom, form="wchart")


def limit_P_infty(u, geom: ArcGeometry):
    """Origin-anchored limit in the slit chart (the conjugate-starred
    sequence of maximal-leading-coefficient polynomials has the same
    modulus); normalized positive at u = 0."""
    anchor = complex(_raw_zchart_origin(0.0, geom))
    rot = cmath.exp(-1j * cmath.phase(anchor))
    out = rot * np.asarray(_raw_zchart_origin(u, geom))
    return out if out.ndim else complex(out)


def envelope_limit(u, n: int, geom: ArcGeometry):
    """(g(u, inf), k(u, u), e^{n g} k) -- the envelope asymptote at degree n."""
    u = complex(u)
    if cmath.isinf(u):
        raise ValueError("use the star symmetry for the point at infinity")
    gval = float(green_omega0(z_of_u(u, geom), geom.z_inf))
    kval = complex(kernel_k(u, u, geom))
    if abs(kval.imag) > 1e-12 * abs(kval):
        raise AssertionError("kernel diagonal must be real")
    kd = kval.real
    return gval, kd, math.exp(n * gval) * kd


def thiran_detaille_norm(n: int, geom: ArcGeometry) -> float:
    """Norm asymptote cot(alpha/4) cap^{n+1} of the monic extremal polynomials."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return geom.cap ** (n + 1) / math.tan(0.25 * geom.alpha)
