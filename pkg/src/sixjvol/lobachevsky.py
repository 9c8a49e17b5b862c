"""The Lobachevsky function and the concave edge potential built from it.

All angles are in radians.  The central object is

    lobachevsky(x) = -integral_0^x log|2 sin t| dt,

an odd, pi-periodic function.  Everything else here is a finite combination
of its values: the face term ``nu``, the edge potential ``bigF`` together
with its unique interior maximizer, the assembled potential ``potential_V``,
and the two auxiliary extremum subjects ``gamma_two`` and ``big_L``.

Conventions
-----------
* An :class:`AngleSextuple` lists six dihedral parameters with slot i
  opposite slot i+3; the four vertex triples are (1,2,3), (1,5,6), (2,4,6),
  (3,4,5), matching the slot convention used for color sextuples elsewhere
  in the package.
* ``vertex_half_sums`` are the four half sums over vertex triples;
  ``quad_half_sums`` are the three half sums over the complementary
  quadruples {1,2,4,5}, {1,3,4,6}, {2,3,5,6}.
* ``V8 = 8*lobachevsky(pi/4)`` is the volume of the regular ideal
  octahedron, ``V3 = 3*lobachevsky(pi/3)`` the volume of the regular ideal
  tetrahedron.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta as _riemann_zeta

TWO_PI = 2.0 * math.pi

# Ascending-series coefficients zeta(2k)/(k*(2k+1)).  After reduction to
# [0, pi/2] the expansion variable (y/pi)^2 never exceeds 1/4, so 28 terms
# leave a truncation error far below 1e-16 relative.
_N_SERIES = 28
_SERIES_COEF = np.array(
    [_riemann_zeta(2 * k) / (k * (2 * k + 1)) for k in range(1, _N_SERIES + 1)]
)


def lobachevsky(x):
    """-integral_0^x log|2 sin t| dt, odd and pi-periodic.

    Accepts a float or any numpy-broadcastable array and returns the same
    shape; absolute accuracy is ~1e-14 (contract: 1e-13).

    The evaluation reduces the argument to [0, pi/2] using periodicity and
    the reflection lob(pi - y) = -lob(y), then sums the ascending series

        lob(y) = y - y*log(2y) + sum_{k>=1} zeta(2k)/(k(2k+1)) * y^(2k+1)/pi^(2k),

    which converges geometrically with ratio (y/pi)^2 <= 1/4.
    """
    arr = np.asarray(x, dtype=float)
    y = np.mod(arr, math.pi)
    reflect = y > 0.5 * math.pi
    y = np.where(reflect, math.pi - y, y)

    t = (y / math.pi) ** 2
    poly = np.zeros_like(t)
    for c in _SERIES_COEF[::-1]:
        poly = poly * t + c
    poly *= t

    safe_y = np.where(y > 0.0, y, 1.0)
    val = y * (1.0 - np.log(2.0 * safe_y) + poly)
    out = np.where(reflect, -val, val)
    if arr.ndim == 0:
        return float(out)
    return out


V8 = 8.0 * lobachevsky(math.pi / 4.0)
V3 = 3.0 * lobachevsky(math.pi / 3.0)

_VERTEX_TRIPLES = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))
_QUADS = ((0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5))


@dataclass(frozen=True)
class AngleSextuple:
    """Six dihedral parameters in [0, 2*pi] with bounded vertex sums.

    The four vertex-triple sums may not exceed 4*pi (the continuum analogue
    of the color-sextuple range bound).
    """

    angles: tuple

    def __init__(self, angles):
        vals = tuple(float(a) for a in angles)
        if len(vals) != 6:
            raise ValueError("an angle sextuple needs exactly 6 entries")
        for a in vals:
            if not (-1e-12 <= a <= TWO_PI + 1e-12):
                raise ValueError(f"angle {a} outside [0, 2*pi]")
        for i, j, k in _VERTEX_TRIPLES:
            s = vals[i] + vals[j] + vals[k]
            if s > 2.0 * TWO_PI + 1e-9:
                raise ValueError(f"vertex sum {s} exceeds 4*pi")
        object.__setattr__(self, "angles", vals)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i):
        return self.angles[i]

    @property
    def vertex_half_sums(self):
        a = self.angles
        return tuple((a[i] + a[j] + a[k]) / 2.0 for i, j, k in _VERTEX_TRIPLES)

    @property
    def quad_half_sums(self):
        a = self.angles
        return tuple((a[i] + a[j] + a[k] + a[l]) / 2.0 for i, j, k, l in _QUADS)


def nu(alpha, beta, gamma):
    """Half-difference face term; <= 0 on [0, pi]^3 (checked numerically).

    Vectorized over numpy-broadcastable inputs.
    """
    s = np.asarray(alpha) + np.asarray(beta) + np.asarray(gamma)
    out = 0.5 * (
        lobachevsky(s / 2.0)
        - lobachevsky(s / 2.0 - np.asarray(gamma))
        - lobachevsky(s / 2.0 - np.asarray(beta))
        - lobachevsky(s / 2.0 - np.asarray(alpha))
    )
    return float(out) if np.ndim(out) == 0 else out


def bigF(z, angles: AngleSextuple):
    """Edge potential: sum of eight lobachevsky values at the slot offsets.

    ``z`` must lie in the bracket [max vertex half sum, min(quad half sums,
    2*pi)]; outside it the potential is not part of the contract and a
    ValueError is raised.
    """
    u = angles.vertex_half_sums
    v = angles.quad_half_sums
    lo = max(u)
    hi = min(min(v), TWO_PI)
    if z < lo - 1e-12 or z > hi + 1e-12:
        raise ValueError(f"z={z} outside the potential bracket [{lo}, {hi}]")
    args = [z - ui for ui in u] + [vj - z for vj in v]
    total = float(np.sum(lobachevsky(np.array(args))))
    return total - lobachevsky(z)


def maximize_F(angles: AngleSextuple):
    """Locate the unique interior maximum of the edge potential.

    Returns (z0, fmax).  The derivative log[sin(2*pi - z) * prod sin(v_j - z)
    / prod sin(z - u_i)] decreases strictly across the bracket with infinite
    boundary slopes, so bisection on its sign converges unconditionally; we
    stop at |F'| <= 1e-12 or bracket width <= 1e-14.

    A width-zero bracket returns that single point.  An empty bracket is
    degenerate: the result is (nan, -inf) and callers treat the potential
    as unattained.
    """
    u = angles.vertex_half_sums
    v = angles.quad_half_sums
    lo = max(u)
    hi = min(min(v), TWO_PI)
    if hi < lo - 1e-12:
        return (math.nan, -math.inf)
    if hi - lo <= 1e-14:
        z0 = 0.5 * (lo + hi)
        return (z0, bigF(min(max(z0, lo), hi), angles))

    def slope_sign(z):
        # same sign as F'(z) while numerator and denominator stay positive
        num = math.sin(TWO_PI - z)
        for vj in v:
            num *= math.sin(vj - z)
        den = 1.0
        for ui in u:
            den *= math.sin(z - ui)
        return num - den, num, den

    a, b = lo, hi
    for _ in range(200):
        if b - a <= 1e-14:
            break
        mid = 0.5 * (a + b)
        g, num, den = slope_sign(mid)
        if num > 0.0 and den > 0.0 and abs(math.log(num / den)) <= 1e-12:
            a = b = mid
            break
        if g > 0.0:
            a = mid
        else:
            b = mid
    z0 = 0.5 * (a + b)
    return (z0, bigF(z0, angles))


def potential_V(angles: AngleSextuple):
    """Potential: maximized edge term plus the four vertex face terms."""
    _, fmax = maximize_F(angles)
    if fmax == -math.inf:
        return -math.inf
    a = angles.angles
    total = fmax
    for i, j, k in _VERTEX_TRIPLES:
        total += nu(a[i], a[j], a[k])
    return total


def gamma_two(a, b):
    """lobachevsky(a+b) - lobachevsky(a) - lobachevsky(b); vectorized.

    Ranges over [-V3, V3] on the domain a, b >= 0, a + b <= 2*pi (checked
    numerically at scale in the test suite).
    """
    out = lobachevsky(np.asarray(a) + np.asarray(b)) - lobachevsky(a) - lobachevsky(b)
    return float(out) if np.ndim(out) == 0 else out


def big_L(a1, a2, a3, a4, b1, b2, b3):
    """Seven-variable extremum subject; maximum V8 at the all-pi/4 point.

    Defined for nonnegative entries with total at most 2*pi as

        -lob(sum) + sum_i lob(a_i) + sum_j lob(b_j)
        + lob((a1+b1)+(a2+b2)+(a3+b3)) - sum_{i<=3} lob(a_i+b_i).

    Vectorized over numpy-broadcastable inputs.
    """
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    a3 = np.asarray(a3, dtype=float)
    a4 = np.asarray(a4, dtype=float)
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    b3 = np.asarray(b3, dtype=float)
    paired = (a1 + b1) + (a2 + b2) + (a3 + b3)
    total = paired + a4
    out = (
        -lobachevsky(total)
        + lobachevsky(a1)
        + lobachevsky(a2)
        + lobachevsky(a3)
        + lobachevsky(a4)
        + lobachevsky(b1)
        + lobachevsky(b2)
        + lobachevsky(b3)
        + lobachevsky(paired)
        - lobachevsky(a1 + b1)
        - lobachevsky(a2 + b2)
        - lobachevsky(a3 + b3)
    )
    return float(out) if np.ndim(out) == 0 else out
