"""Independent harmonic-measure oracle via elliptic integrals.

The slit domain is the sphere minus two disjoint intervals of the extended
real line.  A real Moebius map sends the four endpoints to the symmetric
position (1, 1/k, -1/k, -1); the incomplete elliptic integral of the first
kind then maps the upper half-plane to a rectangle in which the two slits
become the vertical edges, so the harmonic measure of the first slit is the
normalized horizontal coordinate

    omega(p) = (Re F(asin(T(p)), k^2) + K(k^2)) / (2 K(k^2)).

Everything here runs through mpmath (complex incomplete F), making the
route fully independent of the package's balayage collocation.
"""

from __future__ import annotations

import math

import mpmath as mp

mp.mp.dps = 40


def _moebius_from_three(src, dst):
    """Real Moebius map with T(src[i]) = dst[i]; entries may be inf."""

    def std(p1, p2, p3):
        # map (p1, p2, p3) -> (0, 1, inf) as a matrix
        if mp.isinf(p1):
            return mp.matrix([[0, -(p2 - p3)], [-1, p3]])
        if mp.isinf(p2):
            return mp.matrix([[1, -p1], [1, -p3]])
        if mp.isinf(p3):
            return mp.matrix([[1, -p1], [0, p2 - p1]])
        return mp.matrix([[p2 - p3, -p1 * (p2 - p3)], [p2 - p1, -p3 * (p2 - p1)]])

    A = std(*src)
    B = std(*dst)
    M = B**-1 * A

    def T(z):
        a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
        if mp.isinf(z):
            return a / c
        den = c * z + d
        if den == 0:
            return mp.inf
        return (a * z + b) / den

    return T


def harmonic_measure_two_slits(a, b, c, d, p):
    """omega(p, [a, b]; sphere minus ([a, b] u [c, d])).

    The four endpoints must be in cyclic order a, b, c, d on the extended
    real line, with the gaps (b, c) and (d, a); [c, d] may pass through
    infinity.  p is a complex point of the domain.
    """
    a, b, c, d = (mp.mpf(v) if not math.isinf(v) else mp.inf for v in (a, b, c, d))

    def cr(z1, z2, z3, z4):
        def dif(x, y):
            return mp.mpf(1) if (mp.isinf(x) or mp.isinf(y)) else x - y

        num = dif(z1, z3) * dif(z2, z4)
        den = dif(z1, z4) * dif(z2, z3)
        # infinite entries cancel pairwise in cyclic position
        if mp.isinf(z4):
            num = dif(z1, z3) * 1
            den = dif(z2, z3)
            return num / den * 1
        return num / den

    rho = cr(a, b, c, d)
    # (k+1)^2/(4k) = rho  with 0 < k < 1
    k = (2 * rho - 1) - 2 * mp.sqrt(rho * (rho - 1))
    assert 0 < k < 1, f"modulus out of range: {k}"

    T = _moebius_from_three((a, b, c), (mp.mpf(1), 1 / k, -1 / k))
    # consistency: the fourth endpoint must land on -1
    t_d = T(d)
    assert abs(t_d + 1) < 1e-12, f"Moebius consistency failed: T(d) = {t_d}"

    zp = T(mp.mpc(p))
    if mp.im(zp) < 0:
        zp = mp.conj(zp)  # the model data are conjugation symmetric
    m = k * k
    K = mp.ellipk(m)
    F = mp.ellipf(mp.asin(zp), m)
    return float((mp.re(F) + K) / (2 * K))


def slit_mass_oracle(alpha: float, x: float, pole: complex) -> float:
    """Harmonic measure of [-x, x] from ``pole`` in the two-slit Z-chart domain."""
    # near-degenerate endpoints (either gap) need extra working digits
    extra = 3 * max(0.0, -math.log10(x)) + 3 * max(0.0, -math.log10(1.0 - x))
    mp.mp.dps = 40 + int(extra)
    try:
        return harmonic_measure_two_slits(-x, x, 1.0, -1.0, pole)
    finally:
        mp.mp.dps = 40


def xn_oracle(alpha: float, n: int, tol: float = 1e-13) -> float:
    """Root of (n+1) * mass(x) = 1 by bisection on the oracle mass."""
    t = math.tan(alpha / 2)
    pole = complex(0.0, -t)
    target = 1.0 / (n + 1)

    def f(lx):
        return slit_mass_oracle(alpha, math.exp(lx), pole) - target

    lo, hi = math.log(1e-30), math.log(1 - 1e-9)
    flo, fhi = f(lo), f(hi)
    assert flo < 0 < fhi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol:
            break
    return math.exp(0.5 * (lo + hi))
