"""Admissible colorings, triangle coefficients, and the quantum 6j-symbol.

A color sextuple (n1..n6) labels the six edges of a tetrahedron with slot i
opposite slot i+3; its four vertex triples are (n1,n2,n3), (n1,n5,n6),
(n2,n4,n6), (n3,n4,n5).  At an odd level r the symbol is

    sixj = zeta^(-1) * i^lam * prod_faces Delta * sum_z (-1)^z
           {z+1}! / (prod_i {z - T_i}! * prod_j {Q_j - z}!),

with zeta = 2 sin(2*pi/r), lam = sum of the colors, T_i the vertex-triple
half sums, Q_j the quad half sums, and z running from max T_i to min Q_j
(terms at z >= r-1 vanish because {z+1}! does).  All arithmetic happens in
signed-log form; each z-term's phase is exactly i times a real sign because
the i-exponent (z+1) - sum(z-T_i) - sum(Q_j-z) collapses to 1.

``canonical_form`` reduces a sextuple modulo a 192-element symmetry group:
the 24 classical slot symmetries (permuting columns, swapping top and
bottom in two columns) extended by an 8-element family of "priming"
substitutions n -> r-2-n on particular slot subsets.  Every group element
preserves admissibility and the value of the symbol; a quick numeric
self-check of this runs once at import time.  ``bound_scan`` enumerates all
admissible sextuples at a level with numpy, deduplicates through the group,
and reports the growth-rate maximum, argmax, and a histogram.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .qarith import Level, SignedLog, signed_logsum

TWO_PI = 2.0 * math.pi

_FACES = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))
_QUADS = ((0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5))


@dataclass(frozen=True)
class Triple:
    """Three nonnegative color integers."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if int(v) != v or v < 0:
                raise ValueError(f"colors must be nonnegative integers, got {v}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "c", int(self.c))


@dataclass(frozen=True)
class Sextuple:
    """Six nonnegative color integers in the slot convention above."""

    n1: int
    n2: int
    n3: int
    n4: int
    n5: int
    n6: int

    def __post_init__(self):
        for v in self.colors:
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"colors must be nonnegative integers, got {v!r}")
        for name in ("n1", "n2", "n3", "n4", "n5", "n6"):
            object.__setattr__(self, name, int(getattr(self, name)))

    @classmethod
    def from_iterable(cls, it):
        vals = tuple(it)
        if len(vals) != 6:
            raise ValueError("a sextuple needs exactly 6 colors")
        return cls(*vals)

    @property
    def colors(self):
        return (self.n1, self.n2, self.n3, self.n4, self.n5, self.n6)

    @property
    def face_half_sums(self):
        c = self.colors
        return tuple((c[i] + c[j] + c[k]) // 2 for i, j, k in _FACES)

    @property
    def quad_half_sums(self):
        c = self.colors
        return tuple((c[i] + c[j] + c[k] + c[l]) // 2 for i, j, k, l in _QUADS)

    @property
    def total(self):
        return sum(self.colors)

    def faces(self):
        c = self.colors
        return tuple(Triple(c[i], c[j], c[k]) for i, j, k in _FACES)


@dataclass(frozen=True)
class ScanReport:
    """Result of an exhaustive admissible-sextuple scan at one level."""

    r: int
    max_growth: float
    argmax: Sextuple
    count_admissible: int
    histogram: dict

    def to_json_dict(self):
        return {
            "r": self.r,
            "max_growth": self.max_growth,
            "argmax": list(self.argmax.colors),
            "count_admissible": self.count_admissible,
            "histogram": dict(self.histogram),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def is_admissible_triple(t: Triple, lvl: Level) -> bool:
    """Parity, range, and triangle conditions for one vertex triple."""
    a, b, c = t.a, t.b, t.c
    r = lvl.r
    s = a + b + c
    if max(a, b, c) > r - 2:
        return False
    if s % 2 != 0 or s > 2 * r - 4:
        return False
    return a <= b + c and b <= a + c and c <= a + b


def is_admissible_sextuple(s: Sextuple, lvl: Level) -> bool:
    return all(is_admissible_triple(t, lvl) for t in s.faces())


def delta_triple(t: Triple, lvl: Level) -> SignedLog:
    """Triangle coefficient Delta(a,b,c) for an admissible triple.

    The radicand {1}! {x}! {y}! {w}! / {t+1}! (x, y, w the triangle slacks,
    t the half perimeter) is always real; the square root takes the
    positive root of a positive radicand and the positive-imaginary root of
    a negative one, so the phase is exactly 1 or i.
    """
    if not is_admissible_triple(t, lvl):
        raise ValueError(f"triple {(t.a, t.b, t.c)} is not admissible at r={lvl.r}")
    x = (t.a + t.b - t.c) // 2
    y = (t.a - t.b + t.c) // 2
    w = (-t.a + t.b + t.c) // 2
    half = (t.a + t.b + t.c) // 2
    ablog, absign = lvl._ablog, lvl._absign
    # radicand = zeta * g_x g_y g_w / g_{half+1}, with g the real factorial parts
    logmag = float(ablog[1] + ablog[x] + ablog[y] + ablog[w] - ablog[half + 1])
    sign = int(absign[x]) * int(absign[y]) * int(absign[w]) * int(absign[half + 1])
    phase = complex(1.0, 0.0) if sign > 0 else complex(0.0, 1.0)
    return SignedLog(0.5 * logmag, phase)


def _z_terms(s: Sextuple, lvl: Level):
    """Log-magnitudes and real signs of the z-sum terms (phase i factored out).

    Returns (z_values, log_magnitudes, signs); empty arrays when the z-range
    is empty.  Exposed for the sign-coherence diagnostics.
    """
    r = lvl.r
    half_t = s.face_half_sums
    half_q = s.quad_half_sums
    zlo = max(half_t)
    zhi = min(min(half_q), r - 2)
    if zhi < zlo:
        return np.array([], dtype=int), np.array([]), np.array([], dtype=int)
    zs = np.arange(zlo, zhi + 1)
    ablog, absign = lvl._ablog, lvl._absign
    logmag = ablog[zs + 1].copy()
    sign = np.where(zs % 2 == 0, 1, -1) * absign[zs + 1].astype(np.int64)
    for ti in half_t:
        logmag -= ablog[zs - ti]
        sign *= absign[zs - ti]
    for qj in half_q:
        logmag -= ablog[qj - zs]
        sign *= absign[qj - zs]
    return zs, logmag, sign


def sixj_symbol(s: Sextuple, lvl: Level) -> SignedLog:
    """The quantum 6j-symbol of an admissible sextuple, in signed-log form."""
    if not is_admissible_sextuple(s, lvl):
        raise ValueError(f"sextuple {s.colors} is not admissible at r={lvl.r}")
    zs, logmag, sign = _z_terms(s, lvl)
    if len(zs) == 0:
        return SignedLog.zero()
    terms = [
        SignedLog(float(m), complex(0.0, float(sg))) for m, sg in zip(logmag, sign)
    ]
    zsum = signed_logsum(terms)
    prefactor = SignedLog(-float(lvl._ablog[1]), _I_TO[s.total % 4])
    out = prefactor * zsum
    for t in s.faces():
        out = out * delta_triple(t, lvl)
    return out


_I_TO = (complex(1.0, 0.0), complex(0.0, 1.0), complex(-1.0, 0.0), complex(0.0, -1.0))


def sixj_growth(s: Sextuple, lvl: Level) -> float:
    """(2*pi/r) * log|sixj|; -inf when the symbol vanishes."""
    val = sixj_symbol(s, lvl)
    if val.is_zero:
        return -math.inf
    return (TWO_PI / lvl.r) * val.log_magnitude


def sixj_symbol_mp(s: Sextuple, lvl: Level, dps: int = 50) -> SignedLog:
    """Extended-precision evaluation of the defining formula via mpmath.

    Same value as :func:`sixj_symbol` but computed at ``dps`` decimal
    digits; use when the binary64 z-sum reports loss of significance.
    """
    import mpmath as mp

    if not is_admissible_sextuple(s, lvl):
        raise ValueError(f"sextuple {s.colors} is not admissible at r={lvl.r}")
    r = lvl.r
    with mp.workdps(dps):
        q = mp.e ** (2j * mp.pi / r)

        def qint(n):
            return q**n - q**(-n)

        fact = [mp.mpc(1)]
        for n in range(1, 2 * r):
            fact.append(fact[-1] * qint(n))

        def delta(a, b, c):
            rad = (
                qint(1)
                * fact[(a + b - c) // 2]
                * fact[(a - b + c) // 2]
                * fact[(-a + b + c) // 2]
                / fact[(a + b + c) // 2 + 1]
            )
            # the radicand is real; take the positive or positive-imaginary root
            rad = mp.re(rad)
            return mp.sqrt(rad) if rad >= 0 else 1j * mp.sqrt(-rad)

        half_t = s.face_half_sums
        half_q = s.quad_half_sums
        zlo, zhi = max(half_t), min(min(half_q), r - 2)
        acc = mp.mpc(0)
        for z in range(zlo, zhi + 1):
            term = fact[z + 1]
            for ti in half_t:
                term /= fact[z - ti]
            for qj in half_q:
                term /= fact[qj - z]
            acc += (-1) ** z * term
        c = s.colors
        val = acc * mp.mpc(_I_TO[s.total % 4]) / (2 * mp.sin(2 * mp.pi / r))
        for i, j, k in _FACES:
            val *= delta(c[i], c[j], c[k])
        mag = mp.fabs(val)
        if mag == 0:
            return SignedLog.zero()
        return SignedLog(float(mp.log(mag)), complex(val / mag))


# ---------------------------------------------------------------------------
# The 192-element symmetry group


def _compose(g, h):
    """Element acting as: apply h, then g."""
    gperm, gmask = g
    hperm, hmask = h
    perm = tuple(hperm[gperm[i]] for i in range(6))
    mask = tuple(gmask[i] ^ hmask[gperm[i]] for i in range(6))
    return perm, mask


def _generate_group():
    ident = ((0, 1, 2, 3, 4, 5), (0, 0, 0, 0, 0, 0))
    gens = [
        ((1, 0, 2, 4, 3, 5), (0, 0, 0, 0, 0, 0)),  # swap columns 1,2
        ((1, 2, 0, 4, 5, 3), (0, 0, 0, 0, 0, 0)),  # cycle columns
        ((3, 4, 2, 0, 1, 5), (0, 0, 0, 0, 0, 0)),  # flip top/bottom in columns 1,2
        ((0, 1, 2, 3, 4, 5), (0, 0, 0, 1, 1, 1)),  # prime the bottom row
        ((0, 1, 2, 3, 4, 5), (1, 1, 0, 1, 1, 0)),  # prime columns 1,2
    ]
    found = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for gen in gens:
                h = _compose(gen, g)
                if h not in found:
                    found.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(found)


_GROUP = _generate_group()
assert len(_GROUP) == 192, f"symmetry group closure has {len(_GROUP)} elements"
_GROUP_PERMS = np.array([g[0] for g in _GROUP], dtype=np.int64)
_GROUP_MASKS = np.array([g[1] for g in _GROUP], dtype=bool)


def _orbit_images(cols, r):
    """All 192 group images of a color row (or batch); shape (192, ..., 6)."""
    cols = np.asarray(cols)
    imgs = cols[..., _GROUP_PERMS]  # (..., 192, 6)
    imgs = np.moveaxis(imgs, -2, 0)  # (192, ..., 6)
    return np.where(_GROUP_MASKS.reshape((192,) + (1,) * (imgs.ndim - 2) + (6,)),
                    (r - 2) - imgs, imgs)


def canonical_form(s: Sextuple, lvl: Level) -> Sextuple:
    """Lexicographically smallest sextuple in the symmetry orbit of ``s``."""
    if not is_admissible_sextuple(s, lvl):
        raise ValueError(f"sextuple {s.colors} is not admissible at r={lvl.r}")
    imgs = _orbit_images(np.array(s.colors, dtype=np.int64), lvl.r)
    best = min(map(tuple, imgs))
    return Sextuple(*(int(v) for v in best))


def _self_check_group():
    """One-time numeric check: the orbit of a sample tuple shares |6j|.

    Only the magnitude is orbit-invariant: the substitution moves flip the
    sign of the value for about half of all sextuples (the square-root
    branch in the triangle factors does not commute with color reversal),
    so phases are deliberately not compared here.
    """
    lvl = Level(9)
    for colors in ((2, 2, 2, 2, 2, 2), (2, 4, 2, 2, 4, 4), (4, 4, 4, 4, 4, 4)):
        base = sixj_symbol(Sextuple(*colors), lvl)
        for img in _orbit_images(np.array(colors, dtype=np.int64), lvl.r):
            other = sixj_symbol(Sextuple(*(int(v) for v in img)), lvl)
            if base.is_zero or other.is_zero:
                ok = base.is_zero == other.is_zero
            else:
                ok = (
                    abs(base.log_magnitude - other.log_magnitude)
                    <= 1e-9 * max(1.0, abs(base.log_magnitude))
                )
            if not ok:
                raise AssertionError(
                    f"symmetry group self-check failed: {colors} vs {tuple(img)}"
                )


_self_check_group()


# ---------------------------------------------------------------------------
# Exhaustive scan


def _admissibility_mask(cols, r):
    """Vectorized admissibility over an (N, 6) integer color array."""
    ok = np.ones(len(cols), dtype=bool)
    top = 2 * r - 4
    for i, j, k in _FACES:
        a, b, c = cols[:, i], cols[:, j], cols[:, k]
        s = a + b + c
        ok &= (s & 1) == 0
        ok &= s <= top
        ok &= (a <= b + c) & (b <= a + c) & (c <= a + b)
    return ok


def _canonical_keys(cols, r):
    """Base-(r-1) encoding of the lex-min orbit representative per row."""
    powers = (r - 1) ** np.arange(5, -1, -1, dtype=np.int64)
    best = None
    for perm, mask in zip(_GROUP_PERMS, _GROUP_MASKS):
        imgs = cols[:, perm]
        if mask.any():
            imgs = np.where(mask, (r - 2) - imgs, imgs)
        keys = imgs @ powers
        best = keys if best is None else np.minimum(best, keys)
    return best


def _decode_keys(keys, r):
    out = np.empty((len(keys), 6), dtype=np.int64)
    rest = keys.copy()
    for slot in range(5, -1, -1):
        out[:, slot] = rest % (r - 1)
        rest //= r - 1
    return out


def _growth_batch(cols, lvl: Level):
    """Vectorized (2*pi/r) log|sixj| over an (M, 6) array of admissible rows.

    Mirrors sixj_symbol: a shifted signed exponential sum per row, with the
    full-cancellation cutoff at 1e-14 of the accumulated mass.
    """
    r = lvl.r
    ablog = lvl._ablog
    absign = lvl._absign.astype(np.int64)
    half_t = np.stack([(cols[:, i] + cols[:, j] + cols[:, k]) // 2 for i, j, k in _FACES], axis=1)
    half_q = np.stack([(cols[:, i] + cols[:, j] + cols[:, k] + cols[:, l]) // 2 for i, j, k, l in _QUADS], axis=1)
    zlo = half_t.max(axis=1)
    zhi = np.minimum(half_q.min(axis=1), r - 2)
    width = zhi - zlo
    span = int(width.max()) + 1 if len(width) else 1
    z = zlo[:, None] + np.arange(span)[None, :]
    valid = z <= zhi[:, None]
    zc = np.where(valid, z, zlo[:, None])

    logmag = ablog[zc + 1].copy()
    sign = np.where(zc % 2 == 0, 1, -1) * absign[zc + 1]
    for i in range(4):
        idx = zc - half_t[:, i, None]
        logmag -= ablog[idx]
        sign *= absign[idx]
    for j in range(3):
        idx = half_q[:, j, None] - zc
        logmag -= ablog[idx]
        sign *= absign[idx]

    logmag = np.where(valid, logmag, -np.inf)
    rowmax = logmag.max(axis=1)
    shift = np.where(np.isfinite(rowmax), rowmax, 0.0)
    scaled = np.exp(logmag - shift[:, None])
    scaled[~valid] = 0.0
    total = (sign * scaled).sum(axis=1)
    mass = scaled.sum(axis=1)
    cancelled = np.abs(total) <= 1e-14 * mass

    # Delta factors and the zeta^(-1) prefactor, magnitudes only
    dlog = np.full(len(cols), -float(ablog[1]))
    for i, j, k in _FACES:
        a, b, c = cols[:, i], cols[:, j], cols[:, k]
        x = (a + b - c) // 2
        y = (a - b + c) // 2
        w = (-a + b + c) // 2
        h1 = (a + b + c) // 2 + 1
        dlog += 0.5 * (float(ablog[1]) + ablog[x] + ablog[y] + ablog[w] - ablog[h1])

    with np.errstate(divide="ignore"):
        log6j = dlog + rowmax + np.log(np.abs(total))
    log6j[cancelled] = -np.inf
    return (TWO_PI / r) * log6j


def _scan_chunk(n1, base_grid, lvl):
    """Admissible rows with first color n1: count plus canonical keys."""
    r = lvl.r
    cols = np.empty((len(base_grid), 6), dtype=np.int64)
    cols[:, 0] = n1
    cols[:, 1:] = base_grid
    cols = cols[_admissibility_mask(cols, r)]
    return len(cols), _canonical_keys(cols, r)


def bound_scan(lvl: Level, ceiling: int = 17, override: bool = False,
               threads: int = 1) -> ScanReport:
    """Exhaustive growth scan over every admissible sextuple at level r.

    Enumerates {0..r-2}^6 in first-color chunks, filters admissibility,
    reduces each row to its canonical orbit key, and evaluates the growth
    rate once per orbit.  The histogram (bucket width 0.05, keys are left
    edges; vanishing symbols collect under "-inf") counts every admissible
    sextuple, not just orbit representatives.  Ties for the maximum resolve
    to the lexicographically smallest canonical representative, and the
    reported max_growth is re-evaluated through the scalar path so it equals
    sixj_growth(argmax) exactly.

    Chunks are deterministic and merge in index order, so reports are
    identical across thread counts.
    """
    r = lvl.r
    if r > ceiling and not override:
        raise ValueError(
            f"scan at r={r} exceeds the ceiling {ceiling}; pass override to force"
        )
    k = r - 1
    base = np.stack(np.meshgrid(*([np.arange(k)] * 5), indexing="ij"), axis=-1)
    base_grid = base.reshape(-1, 5)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda n1: _scan_chunk(n1, base_grid, lvl), range(k)))
    else:
        results = [_scan_chunk(n1, base_grid, lvl) for n1 in range(k)]

    count_admissible = int(sum(c for c, _ in results))
    all_keys = np.concatenate([keys for _, keys in results])
    rep_keys, inverse = np.unique(all_keys, return_inverse=True)
    reps = _decode_keys(rep_keys, r)
    growth = _growth_batch(reps, lvl)

    finite = np.isfinite(growth)
    if finite.any():
        best_idx = int(np.argmax(np.where(finite, growth, -np.inf)))
    else:
        best_idx = 0
    argmax = Sextuple(*(int(v) for v in reps[best_idx]))
    max_growth = sixj_growth(argmax, lvl)

    per_tuple = growth[inverse]
    hist = {}
    n_vanish = int(np.sum(~np.isfinite(per_tuple)))
    if n_vanish:
        hist["-inf"] = n_vanish
    fin = per_tuple[np.isfinite(per_tuple)]
    if len(fin):
        buckets = np.floor(fin / 0.05).astype(np.int64)
        vals, counts = np.unique(buckets, return_counts=True)
        for b, c in zip(vals, counts):
            hist[f"{b * 0.05:.2f}"] = int(c)
    return ScanReport(r, max_growth, argmax, count_admissible, hist)
