"""Growth-rate series over odd levels, their extrapolated limits, and the
angle-to-color bridge.

A growth series collects g(r) = (2*pi/r) * log|quantity(r)| over an
increasing list of odd levels and fits the three-parameter model

    g(r) = L + a*log(r)/r + b/r

by linear least squares; L is the extrapolated limit and the remaining
terms absorb the leading finite-size corrections.  Levels where the
quantity is infeasible or vanishes are recorded as gaps and excluded from
the fit.  The fit is diagnostic: the residual RMS is reported, no error
bars are claimed.

The angle-to-color bridge realizes a target angle sextuple theta as color
sequences n_i(r) ~ r*theta_i/(2*pi) subject to admissibility and to the
two hypothesis families under which the growth of a single 6j-symbol has
a geometric limit: every half-quad exceeds every half-face by at most
(r-2)/2, and every half-face lies in [(r-2)/2, r-2].  The limit itself is
computed on the angle side as a closed Lobachevsky-function expression
plus the maximized edge potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fsl import FSLPresentation, fsl_tv_log
from .lobachevsky import AngleSextuple, V8, lobachevsky, maximize_F
from .qarith import Level
from .sixj import Sextuple, is_admissible_sextuple, sixj_growth

TWO_PI = 2.0 * math.pi

_GROWTH_KINDS = ("sixj-central", "fsl", "custom-sextuple-sequence")


class InfeasibleError(ValueError):
    """No color sequence realizes the requested angles at this level."""


@dataclass(frozen=True)
class GrowthSeries:
    """Sampled growth values, the fitted model, and its residual."""

    points: tuple  # ((r, g), ...) sorted by r
    fit: tuple  # (L, a, b), or None when fewer than 3 points
    residual_rms: float  # nan when no fit
    gaps: tuple = ()  # levels excluded (infeasible or vanishing)

    @property
    def limit(self):
        return None if self.fit is None else self.fit[0]


def fit_growth_model(points):
    """Least-squares (L, a, b) for g = L + a*log r/r + b/r, plus residual RMS.

    Returns (None, nan) when fewer than 3 points are supplied.
    """
    if len(points) < 3:
        return None, math.nan
    r = np.array([p[0] for p in points], dtype=float)
    g = np.array([p[1] for p in points], dtype=float)
    design = np.column_stack([np.ones_like(r), np.log(r) / r, 1.0 / r])
    coef, _, _, _ = np.linalg.lstsq(design, g, rcond=None)
    resid = g - design @ coef
    rms = float(np.sqrt(np.mean(resid * resid)))
    return (float(coef[0]), float(coef[1]), float(coef[2])), rms


def model_growth(fit, r) -> float:
    """Evaluate a fitted (L, a, b) model at level r."""
    L, a, b = fit
    return L + a * math.log(r) / r + b / r


def central_even_tuple(lvl: Level) -> Sextuple:
    """The constant sextuple (m,...,m) with m the even color nearest the
    middle of the palette, rounding toward the interior: m = 2*((r-1)//4).

    Staying at or below (r-1)/2 keeps every face sum strictly inside the
    admissibility ceiling for r >= 5 and keeps the saddle of the term-sum
    away from its clipped endpoint, so the growth sequence rises smoothly;
    the even color just *above* the middle touches the ceiling and its
    series carries a much larger finite-r correction.
    """
    m = 2 * ((lvl.r - 1) // 4)
    return Sextuple(*(m,) * 6)


def _validate_r_list(r_list):
    rs = [int(r) for r in r_list]
    if not rs:
        raise ValueError("r_list must be nonempty")
    for r in rs:
        if r < 3 or r % 2 == 0:
            raise ValueError(f"levels must be odd integers >= 3, got {r}")
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError("r_list must be strictly increasing")
    return rs


def _resolve_custom(params, lvl: Level):
    """Sextuple for one level from a callable or an {r: colors} mapping."""
    if callable(params):
        out = params(lvl)
    else:
        try:
            out = params[lvl.r]
        except (KeyError, TypeError):
            raise InfeasibleError(f"no sextuple supplied for r={lvl.r}")
    if out is None:
        raise InfeasibleError(f"no sextuple supplied for r={lvl.r}")
    if not isinstance(out, Sextuple):
        out = Sextuple(*out)
    return out


def growth_series(kind: str, params, r_list) -> GrowthSeries:
    """Evaluate one growth functional over odd levels and fit the model.

    kind 'sixj-central': g(r) of the central even sextuple; params unused.
    kind 'fsl': g(r) = (2*pi/r) * log of the shadow-link complement
    invariant; params is the FSLPresentation.
    kind 'custom-sextuple-sequence': g(r) of a user-specified sextuple per
    level; params is a callable lvl -> colors or a mapping r -> colors.

    Infeasible levels (central tuple not admissible, no custom tuple,
    vanishing quantity) become gaps; data errors raise.
    """
    if kind not in _GROWTH_KINDS:
        raise ValueError(f"unknown series kind {kind!r}; expected one of {_GROWTH_KINDS}")
    rs = _validate_r_list(r_list)
    points = []
    gaps = []
    for r in rs:
        lvl = Level(r)
        if kind == "sixj-central":
            s = central_even_tuple(lvl)
            if not is_admissible_sextuple(s, lvl):
                gaps.append(r)
                continue
            g = sixj_growth(s, lvl)
        elif kind == "fsl":
            if not isinstance(params, FSLPresentation):
                raise ValueError("kind 'fsl' needs an FSLPresentation as params")
            log_tv, nonzero, _ = fsl_tv_log(params, lvl)
            if nonzero == 0:
                gaps.append(r)
                continue
            g = (TWO_PI / r) * log_tv
        else:
            try:
                s = _resolve_custom(params, lvl)
            except InfeasibleError:
                gaps.append(r)
                continue
            if not is_admissible_sextuple(s, lvl):
                raise ValueError(f"custom sextuple {s.colors} not admissible at r={r}")
            g = sixj_growth(s, lvl)
        if g == -math.inf:
            gaps.append(r)
            continue
        points.append((r, float(g)))
    fit, rms = fit_growth_model(points)
    return GrowthSeries(tuple(points), fit, rms, tuple(gaps))


# offsets explored around the rounded colors, in L1-then-lex order
_SEARCH_RADIUS = 3


def angle_sequence_colors(theta: AngleSextuple, lvl: Level) -> Sextuple:
    """The color sextuple realizing the angles theta at level r.

    Starts from n_i = round(r*theta_i / 2pi) and searches offsets within
    +-3 per coordinate for the admissible tuple satisfying both hypothesis
    families (integer forms: 0 <= 2(Q_j - T_i) <= r-2 for all i,j and
    r-2 <= 2*T_i <= 2r-4), minimizing total |offset| with lexicographic
    tie-break on the resulting colors.  Raises InfeasibleError when the
    cube contains no such tuple.
    """
    r = lvl.r
    # round half up; the 1e-9 guard keeps half-integer targets (theta=pi at
    # odd r gives r*theta/2pi = r/2 exactly) from flipping down on float
    # jitter such as 11*pi/(2*pi) = 5.499999999999999
    base = np.floor(
        np.array(theta.angles) * r / TWO_PI + 0.5 + 1e-9
    ).astype(np.int64)
    span = np.arange(-_SEARCH_RADIUS, _SEARCH_RADIUS + 1, dtype=np.int64)
    grids = np.meshgrid(*([span] * 6), indexing="ij")
    offsets = np.stack([g.ravel() for g in grids], axis=1)  # (7^6, 6)
    cand = base[None, :] + offsets

    ok = np.all((cand >= 0) & (cand <= r - 2), axis=1)
    faces = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))
    quads = ((0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5))
    two_t = np.stack([cand[:, list(f)].sum(axis=1) for f in faces], axis=1)
    two_q = np.stack([cand[:, list(q)].sum(axis=1) for q in quads], axis=1)
    ok &= np.all(two_t % 2 == 0, axis=1)
    # triangle inequalities: 2*T_i - 2*n >= 0 for each edge n of face i
    for fi, f in enumerate(faces):
        for e in f:
            ok &= two_t[:, fi] - 2 * cand[:, e] >= 0
    ok &= np.all(two_t <= 2 * r - 4, axis=1)
    # hypothesis families
    diff = two_q[:, None, :] - two_t[:, :, None]  # (N, 4, 3) = 2(Q_j - T_i)
    ok &= np.all((diff >= 0) & (diff <= r - 2), axis=(1, 2))
    ok &= np.all(two_t >= r - 2, axis=1)

    if not np.any(ok):
        raise InfeasibleError(
            f"no admissible color sextuple within +-{_SEARCH_RADIUS} of "
            f"{tuple(int(b) for b in base)} satisfies the hypothesis "
            f"families at r={r}"
        )
    good = np.flatnonzero(ok)
    l1 = np.abs(offsets[good]).sum(axis=1)
    best_l1 = l1.min()
    finalists = good[l1 == best_l1]
    rows = [tuple(int(x) for x in cand[i]) for i in finalists]
    return Sextuple(*min(rows))


def appendix_limit(theta: AngleSextuple) -> float:
    """Angle-side growth limit of the realized 6j sequence.

    -(1/2) * sum_{i,j} lob(V_j - U_i) + (1/2) * sum_i lob(U_i) + max F,
    with U_i the vertex half-sums and V_j the quad half-sums of theta.
    """
    u = np.array(theta.vertex_half_sums)
    v = np.array(theta.quad_half_sums)
    _, fmax = maximize_F(theta)
    if fmax == -math.inf:
        raise ValueError(
            "empty potential bracket: max vertex half-sum exceeds the "
            "smallest quad half-sum"
        )
    cross = float(np.sum(lobachevsky(v[None, :] - u[:, None])))
    vertex = float(np.sum(lobachevsky(u)))
    return -0.5 * cross + 0.5 * vertex + fmax


def appendix_growth_check(theta: AngleSextuple, r_list) -> GrowthSeries:
    """Growth series of the color sequence realizing theta.

    Levels where no realization exists are gaps.  The caller compares the
    fitted limit with appendix_limit(theta) and with the truncated-
    tetrahedron volume at the corresponding dihedral angles.
    """
    return growth_series(
        "custom-sextuple-sequence",
        lambda lvl: angle_sequence_colors(theta, lvl),
        r_list,
    )


def triangulation_growth_bound(t: int) -> float:
    """Largest possible growth for a manifold triangulated by t tetrahedra."""
    if not isinstance(t, int) or isinstance(t, bool) or t < 0:
        raise ValueError(f"tetrahedron count must be a nonnegative integer, got {t!r}")
    return V8 * t
