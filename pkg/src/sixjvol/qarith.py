"""Quantum integers and factorials at q = exp(2*pi*i/r), in signed-log form.

At an odd level r >= 3 the quantum integer is

    qint(n) = q^n - q^(-n) = 2i * sin(2*pi*n/r),

a purely imaginary number, and the quantum factorial is the product
qint(1)*...*qint(n), which vanishes exactly when n >= r.  Magnitudes range
from ~(2*pi/r)^r to ~2^r across a level, so every value is carried as a
:class:`SignedLog`: a natural-log magnitude plus a unit phase.  Phases stay
exactly inside {+1, -1, +i, -i} through products because each factorial
contributes i^n times a real sign.

The per-level tables ``_ablog``/``_absign`` hold cumulative log-magnitudes
and sign products of 2*sin(2*pi*k/r); they are built once in the Level
constructor and never mutated, so Levels are safe to share across threads.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .lobachevsky import lobachevsky

TWO_PI = 2.0 * math.pi

# i^k for k mod 4, as exact complex literals
_I_POW = (complex(1.0, 0.0), complex(0.0, 1.0), complex(-1.0, 0.0), complex(0.0, -1.0))


class LossOfSignificanceWarning(UserWarning):
    """A signed log-domain sum cancelled below 1e-10 of its largest term."""


class NumericFailure(ArithmeticError):
    """A numeric invariant failed hard (e.g. an imaginary residue too large)."""


@dataclass(frozen=True)
class SignedLog:
    """A complex value as (log magnitude, unit phase).

    ``log_magnitude = -inf`` represents exactly zero, with the neutral
    phase +1.  For nonzero values the phase must be unit modulus within
    1e-12; it is stored as given (not renormalized) so that exact literals
    like 1, -1, 1j survive arithmetic bit-for-bit.
    """

    log_magnitude: float
    phase: complex = complex(1.0, 0.0)

    def __post_init__(self):
        if self.log_magnitude == -math.inf:
            object.__setattr__(self, "phase", complex(1.0, 0.0))
        else:
            if abs(abs(self.phase) - 1.0) > 1e-12:
                raise ValueError(f"phase {self.phase} is not unit modulus")

    @classmethod
    def zero(cls):
        return cls(-math.inf, complex(1.0, 0.0))

    @classmethod
    def one(cls):
        return cls(0.0, complex(1.0, 0.0))

    @classmethod
    def from_value(cls, v):
        v = complex(v)
        m = abs(v)
        if m == 0.0:
            return cls.zero()
        return cls(math.log(m), v / m)

    @property
    def is_zero(self):
        return self.log_magnitude == -math.inf

    def value(self):
        if self.is_zero:
            return complex(0.0, 0.0)
        return self.phase * math.exp(self.log_magnitude)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return SignedLog.zero()
        return SignedLog(self.log_magnitude + other.log_magnitude, self.phase * other.phase)

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by an exact SignedLog zero")
        if self.is_zero:
            return SignedLog.zero()
        return SignedLog(self.log_magnitude - other.log_magnitude, self.phase / other.phase)

    def __pow__(self, k):
        k = int(k)
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("zero to a nonpositive power")
            return SignedLog.zero()
        return SignedLog(k * self.log_magnitude, self.phase**k)

    def conjugate(self):
        if self.is_zero:
            return SignedLog.zero()
        return SignedLog(self.log_magnitude, self.phase.conjugate())


@dataclass(frozen=True, eq=True)
class Level:
    """An odd root-of-unity level r >= 3 with its factorial tables."""

    r: int
    _ablog: np.ndarray = field(compare=False, repr=False, default=None)
    _absign: np.ndarray = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        r = self.r
        if not isinstance(r, (int, np.integer)) or isinstance(r, bool):
            raise ValueError("level r must be an integer")
        if r < 3 or r % 2 == 0:
            raise ValueError(f"level r must be an odd integer >= 3, got {r}")
        r = int(r)
        object.__setattr__(self, "r", r)
        k = np.arange(r, dtype=np.int64)
        kmin = np.minimum(k, r - k)  # |sin| is symmetric about r/2
        logabs = np.zeros(r)
        logabs[1:] = np.log(2.0 * np.sin(TWO_PI * kmin[1:] / r))
        # cumulative: _ablog[n] = log prod_{k<=n} |2 sin(2 pi k / r)|
        object.__setattr__(self, "_ablog", np.cumsum(logabs))
        # sign of sin(2 pi k / r) is + for k <= (r-1)/2, - above
        half = (r - 1) // 2
        signs = np.where((k >= 1) & (k > half), -1, 1).astype(np.int8)
        object.__setattr__(self, "_absign", np.multiply.accumulate(signs))

    def __hash__(self):
        return hash(("Level", self.r))


def quantum_integer(n, lvl: Level) -> SignedLog:
    """q^n - q^(-n) = 2i sin(2*pi*n/r) as a SignedLog; any integer n."""
    r = lvl.r
    k = int(n) % r
    if k == 0:
        return SignedLog.zero()
    if 2 * k < r:
        sign, kabs = 1, k
    else:
        sign, kabs = -1, r - k
    mag = math.log(2.0 * math.sin(TWO_PI * kabs / r))
    return SignedLog(mag, complex(0.0, float(sign)))


def quantum_factorial(n, lvl: Level) -> SignedLog:
    """Product of quantum_integer(1..n); exactly zero once n >= r.

    Callers never exceed n = 2r - 4; anything above 2r is rejected as a
    likely indexing bug rather than silently returning zero.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"quantum factorial needs n >= 0, got {n}")
    if n > 2 * lvl.r:
        raise ValueError(f"quantum factorial argument {n} exceeds 2r = {2 * lvl.r}")
    if n >= lvl.r:
        return SignedLog.zero()
    phase = _I_POW[n % 4] * float(lvl._absign[n])
    return SignedLog(float(lvl._ablog[n]), phase)


def _phase_axis(ratio):
    """Classify a unit ratio as (axis, sign) with axis 0 = real, 1 = imaginary.

    The ratio must sit within 1e-9 of one of {+1, -1, +i, -i}.
    """
    re, im = ratio.real, ratio.imag
    if abs(im) <= 1e-9 and abs(abs(re) - 1.0) <= 1e-9:
        return 0, (1.0 if re > 0 else -1.0)
    if abs(re) <= 1e-9 and abs(abs(im) - 1.0) <= 1e-9:
        return 1, (1.0 if im > 0 else -1.0)
    raise ValueError(f"term phase ratio {ratio} is not on the four half-axes")


def signed_logsum(terms) -> SignedLog:
    """Stable sum of SignedLog terms whose phases share the four half-axes.

    After factoring out the first nonzero term's phase, every term must lie
    on {+1, -1, +i, -i} within 1e-9.  The maximum magnitude is factored
    out and the residuals are accumulated with exact (fsum) compensation,
    separately per axis, so the result is permutation invariant.

    Full cancellation below 1e-14 of the accumulated mass returns the exact
    zero.  A result below 1e-10 of the largest term raises a
    LossOfSignificanceWarning (callers may retry at higher precision).
    """
    live = [t for t in terms if not t.is_zero]
    if not live:
        return SignedLog.zero()
    base = live[0].phase
    mags = np.array([t.log_magnitude for t in live])
    mmax = float(mags.max())
    scaled = np.exp(mags - mmax)
    re_parts, im_parts = [], []
    for t, s in zip(live, scaled):
        axis, sign = _phase_axis(t.phase / base)
        (re_parts if axis == 0 else im_parts).append(sign * float(s))
    re = math.fsum(re_parts)
    im = math.fsum(im_parts)
    mass = math.fsum(float(s) for s in scaled)
    total = complex(re, im)
    amp = abs(total)
    if amp <= 1e-14 * mass:
        return SignedLog.zero()
    if amp < 1e-10:
        warnings.warn(
            f"signed_logsum lost significance: |sum| = {amp:.3e} of max term",
            LossOfSignificanceWarning,
            stacklevel=2,
        )
    if im == 0.0:
        phase = base * (1.0 if re > 0 else -1.0)
    elif re == 0.0:
        phase = base * complex(0.0, 1.0 if im > 0 else -1.0)
    else:
        phase = base * (total / amp)
    return SignedLog(mmax + math.log(amp), phase)


def factorial_asymptotic_residual(n, lvl: Level) -> float:
    """log|{n}!| + (r/2pi) * lobachevsky(2*pi*n/r), for 0 < n < r.

    The integral comparison makes this O(log r) uniformly in n; the test
    suite freezes the empirical constant.
    """
    n = int(n)
    if not 0 < n < lvl.r:
        raise ValueError(f"residual needs 0 < n < r, got n={n}, r={lvl.r}")
    return float(lvl._ablog[n]) + (lvl.r / TWO_PI) * lobachevsky(TWO_PI * n / lvl.r)
