"""Volumes of hyperbolic truncated tetrahedra from dihedral-angle data.

The volume of an ideal or hyperideal hyperbolic tetrahedron with truncated
vertices is evaluated through a dilogarithm formula: the six dihedral
angles are encoded as unit complex numbers a_i = exp(i*alpha_i), a
quadratic equation picks out two unit-modulus roots, and the volume is
half the imaginary part of the difference of an eight-term dilogarithm
sum at the two roots.

Conventions
-----------
* Angle slots follow the tetrahedron labeling used across this package:
  opposite edge pairs are (1,4), (2,5), (3,6) and the four vertices see the
  edge triples (1,2,3), (1,5,6), (2,4,6), (3,4,5).
* ``alphas`` are the (interior) dihedral angles along the six edges, in
  radians, all >= 0.  Around each vertex they sum to at most pi — below pi
  the vertex is hyperideal (truncated), at exactly pi it is ideal.  The
  ideal regular tetrahedron is (pi/3,...,pi/3); (0,...,0) is the
  regular-ideal-octahedron limit, whose volume is ``lobachevsky.V8``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.special import bernoulli

from .lobachevsky import AngleSextuple

PI = math.pi
PI2_6 = PI * PI / 6.0

_FACES = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))
_QUADS = ((0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5))
# complements of the four faces, in the same order
_ANTI_FACES = ((3, 4, 5), (1, 2, 3), (0, 2, 4), (0, 1, 5))
_OPP_PAIRS = ((0, 3), (1, 4), (2, 5))


class DegenerateGeometryWarning(UserWarning):
    """All quadratic coefficients vanished; the value was extrapolated."""


# --------------------------------------------------------------------------
# Dilogarithm

# Coefficients B_k / (k+1)! of the u-series Li2 = sum c_k u^(k+1) with
# u = -log(1-z); usable for |u| well below 2*pi.
_U_COEF = tuple(
    float(b) / math.factorial(k + 1) for k, b in enumerate(bernoulli(42))
)


def _dilog_base(z: complex) -> complex:
    """Li2 on {|z| <= 1, Re z <= 1/2} by power series or the u-series."""
    if abs(z) <= 0.5:
        acc = 0j
        term = 1.0 + 0j
        for n in range(1, 75):
            term *= z
            piece = term / (n * n)
            acc += piece
            if abs(piece) <= 1e-18 * max(1.0, abs(acc)):
                break
        return acc
    u = -cmath.log(1.0 - z)
    acc = 0j
    upow = 1.0 + 0j
    for k, ck in enumerate(_U_COEF):
        upow *= u
        if ck == 0.0:
            continue
        piece = ck * upow
        acc += piece
        if k > 4 and abs(piece) <= 1e-18 * max(1.0, abs(acc)):
            break
    return acc


def dilog(z: complex) -> complex:
    """Principal-branch dilogarithm, accurate to ~1e-13 off the cut [1, oo).

    z = 1 returns the limit pi^2/6; other reals > 1 (points on the branch
    cut) are rejected.
    """
    z = complex(z)
    if z == 0:
        return 0j
    if z.imag == 0.0:
        if z.real == 1.0:
            return complex(PI2_6)
        if z.real > 1.0:
            raise ValueError(
                f"dilog argument {z.real} lies on the branch cut [1, oo)"
            )
    if abs(z) > 1.0:
        inv = 1.0 / z
        logterm = cmath.log(-z)
        return -dilog(inv) - PI2_6 - 0.5 * logterm * logterm
    if z.real > 0.5:
        return PI2_6 - cmath.log(z) * cmath.log(1.0 - z) - _dilog_base(1.0 - z)
    return _dilog_base(z)


# --------------------------------------------------------------------------
# Angle data


@dataclass(frozen=True)
class DihedralAngles:
    """Six dihedral angles of a truncated tetrahedron (radians)."""

    alphas: tuple

    def __init__(self, alphas):
        vals = tuple(float(a) for a in alphas)
        if len(vals) != 6:
            raise ValueError(f"expected 6 dihedral angles, got {len(vals)}")
        cleaned = []
        for a in vals:
            if a < -1e-12:
                raise ValueError(f"dihedral angle {a} is negative")
            cleaned.append(max(a, 0.0))
        object.__setattr__(self, "alphas", tuple(cleaned))

    def __iter__(self):
        return iter(self.alphas)

    def __getitem__(self, i):
        return self.alphas[i]

    @property
    def vertex_sums(self):
        """Angle sum around each of the four vertices."""
        a = self.alphas
        return tuple(a[i] + a[j] + a[k] for i, j, k in _FACES)


def bao_bonahon_check(d: DihedralAngles) -> bool:
    """True iff every vertex angle sum is at most pi (within 1e-12)."""
    return all(s <= PI + 1e-12 for s in d.vertex_sums)


def angles_from_thetas(theta: AngleSextuple) -> DihedralAngles:
    """Exterior dihedral angles |pi - theta_i| from tetrahedral angle data."""
    return DihedralAngles(abs(PI - t) for t in theta)


# --------------------------------------------------------------------------
# Volume

def _quad_coefficients(a):
    """Coefficients (c0, c1, c2) of c0 + c1*z + c2*z^2 for the root system."""
    prod6 = a[0] * a[1] * a[2] * a[3] * a[4] * a[5]
    c0 = 1.0 + 0j
    for q in _QUADS:
        c0 += a[q[0]] * a[q[1]] * a[q[2]] * a[q[3]]
    for f in _FACES:
        c0 += a[f[0]] * a[f[1]] * a[f[2]]
    c1 = 0j
    for i, j in _OPP_PAIRS:
        c1 += (a[i] - 1.0 / a[i]) * (a[j] - 1.0 / a[j])
    c1 *= -prod6
    c2 = prod6
    for i, j in _OPP_PAIRS:
        c2 += a[i] * a[j]
    for f in _ANTI_FACES:
        c2 += a[f[0]] * a[f[1]] * a[f[2]]
    c2 *= prod6
    return c0, c1, c2


def _nudged(w: complex) -> complex:
    # keep dilogarithm arguments off the branch cut [1, oo)
    if abs(w.imag) <= 1e-12 and w.real >= 1.0 - 1e-12:
        return complex(w.real, w.imag + 1e-12)
    return w


def _U(z: complex, a) -> complex:
    acc = dilog(_nudged(z))
    for q in _QUADS:
        acc += dilog(_nudged(z * a[q[0]] * a[q[1]] * a[q[2]] * a[q[3]]))
    for f in _FACES:
        acc -= dilog(_nudged(-z * a[f[0]] * a[f[1]] * a[f[2]]))
    return 0.5 * acc


def _volume_at(alphas):
    a = tuple(cmath.exp(1j * al) for al in alphas)
    c0, c1, c2 = _quad_coefficients(a)
    disc = cmath.sqrt(c1 * c1 - 4.0 * c0 * c2)
    if abs(c1 + disc) >= abs(c1 - disc):
        q = -0.5 * (c1 + disc)
    else:
        q = -0.5 * (c1 - disc)
    z1 = q / c2
    z2 = c0 / q
    return 0.5 * abs((_U(z1, a) - _U(z2, a)).imag), z1, z2


def truncated_tet_volume(d: DihedralAngles) -> float:
    """Hyperbolic volume of the truncated tetrahedron with these angles.

    The two roots of the coefficient quadratic are unit complex numbers for
    admissible data; the root-labeling ambiguity is resolved toward a
    nonnegative volume.  Should all three quadratic coefficients vanish
    (a degenerate coefficient collapse, not reachable from angle sets that
    pass the vertex check), the value is Richardson-extrapolated from
    angles shifted by 1e-5 and 5e-6 and a DegenerateGeometryWarning is
    issued.
    """
    if not bao_bonahon_check(d):
        raise ValueError(
            f"vertex angle sums {tuple(round(s, 6) for s in d.vertex_sums)} "
            "exceed pi: not an admissible truncated tetrahedron"
        )
    a = tuple(cmath.exp(1j * al) for al in d.alphas)
    c0, c1, c2 = _quad_coefficients(a)
    if max(abs(c0), abs(c1), abs(c2)) < 1e-10:
        warnings.warn(
            "degenerate angle data: quadratic coefficients vanish; "
            "volume extrapolated from perturbed angles",
            DegenerateGeometryWarning,
            stacklevel=2,
        )
        eps = 1e-5
        v_eps, _, _ = _volume_at(tuple(al + eps for al in d.alphas))
        v_half, _, _ = _volume_at(tuple(al + eps / 2 for al in d.alphas))
        return 2.0 * v_half - v_eps
    vol, _, _ = _volume_at(d.alphas)
    return vol
