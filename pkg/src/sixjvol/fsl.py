"""Shadow-link presentations: quantum invariants and volume bounds.

A presentation is a union of c building blocks (each a 3-ball with four
disks, combinatorially a tetrahedral block with six strand slots) whose
strands close up into k link components.  The input supplies the resolved
strand-to-component map directly: block i lists, slot by slot, which
component passes through it.  Slots follow the same convention as
``sixj.Sextuple``: slot triples (1,2,3), (1,5,6), (2,4,6), (3,4,5) are the
vertex triples, so a block's colored slots feed the 6j-symbol directly.

For an even coloring (components colored from J_r = {0, 2, ..., r-3}) the
surgery-presentation invariant is

    (2 sin(2pi/r)/sqrt(r))^(-c) * prod_i sixj(block i colors),

zero when any block's sextuple is not r-admissible.  The associated
real invariant of the complement sums 2^{b2} |RT|^2 over all even
colorings, where b2 (an input, default 0) is the Z/2 second-homology
rank; it only scales the sum by 2^{b2}, which growth rates never see.
The complement of a c-block presentation is hyperbolic with volume
exactly 2*c*V8 (V8 the regular ideal octahedron volume), which is what
the growth of the invariant is measured against.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from .lobachevsky import V8
from .qarith import Level, SignedLog, signed_logsum
from .sixj import Sextuple, canonical_form, is_admissible_sextuple, sixj_symbol

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FSLPresentation:
    """Resolved presentation: block count, component count, strand map.

    ``blocks`` is a tuple of c 6-tuples; entry j of block i is the
    component id (1-based, in 1..k) passing through slot j of block i.
    ``b2`` is the Z/2 second-homology rank of the complement (input,
    default 0); it contributes only a factor 2^{b2} to the invariant.
    """

    c: int
    k: int
    blocks: tuple
    b2: int = 0

    def __post_init__(self):
        if not isinstance(self.c, int) or self.c < 1:
            raise ValueError(f"block count c must be an integer >= 1, got {self.c!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"component count k must be an integer >= 1, got {self.k!r}")
        if not isinstance(self.b2, int) or self.b2 < 0:
            raise ValueError(f"b2 must be a nonnegative integer, got {self.b2!r}")
        if len(self.blocks) != self.c:
            raise ValueError(f"c={self.c} but {len(self.blocks)} blocks given")
        used = set()
        for i, block in enumerate(self.blocks):
            if len(block) != 6:
                raise ValueError(f"block {i} needs 6 slots, got {len(block)}")
            for comp in block:
                if not isinstance(comp, int) or not 1 <= comp <= self.k:
                    raise ValueError(
                        f"block {i} references component {comp!r} outside 1..{self.k}"
                    )
            used.update(block)
        missing = set(range(1, self.k + 1)) - used
        if missing:
            raise ValueError(f"components {sorted(missing)} appear in no slot")


@dataclass(frozen=True, eq=False)
class EvenColoring:
    """Component id -> even color; entries are validated against r in use."""

    col: dict

    def __post_init__(self):
        for comp, n in self.col.items():
            if not isinstance(n, int) or n < 0 or n % 2:
                raise ValueError(f"component {comp}: color {n!r} is not an even color >= 0")

    def __getitem__(self, comp):
        return self.col[comp]


def load_fsl(doc) -> FSLPresentation:
    """Parse and validate a presentation document (JSON text or dict)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ValueError(f"presentation document is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ValueError("presentation document must be a JSON object")
    for key in ("c", "k", "blocks"):
        if key not in doc:
            raise ValueError(f"presentation document needs field {key!r}")
    blocks = doc["blocks"]
    if not isinstance(blocks, list):
        raise ValueError("'blocks' must be a list")
    tuples = []
    for i, block in enumerate(blocks):
        if not isinstance(block, dict) or "slots" not in block:
            raise ValueError(f"block #{i} needs a 'slots' field")
        slots = block["slots"]
        if not isinstance(slots, list) or len(slots) != 6:
            raise ValueError(f"block #{i} needs exactly 6 slots")
        tuples.append(tuple(slots))
    return FSLPresentation(doc["c"], doc["k"], tuple(tuples), doc.get("b2", 0))


def _even_palette(lvl: Level) -> tuple:
    """J_r = {0, 2, ..., r-3}: the even colors of the level."""
    return tuple(range(0, lvl.r - 2, 2))


def rt_invariant(p: FSLPresentation, col: EvenColoring, lvl: Level) -> SignedLog:
    """Surgery-presentation invariant of one even coloring.

    (2 sin(2pi/r)/sqrt(r))^(-c) times the product over blocks of the
    6j-symbol of the block's colored sextuple; exactly zero when any
    block's sextuple is not r-admissible.
    """
    r = lvl.r
    top = r - 3
    for comp in range(1, p.k + 1):
        if comp not in col.col:
            raise ValueError(f"coloring misses component {comp}")
        if col[comp] > top:
            raise ValueError(f"component {comp}: color {col[comp]} exceeds r-3 = {top}")
    acc = SignedLog(-p.c * math.log(2.0 * math.sin(TWO_PI / r) / math.sqrt(r)))
    for block in p.blocks:
        s = Sextuple(*(col[comp] for comp in block))
        if not is_admissible_sextuple(s, lvl):
            return SignedLog.zero()
        acc = acc * sixj_symbol(s, lvl)
    return acc


def _coloring_chunk(p, lvl, palette, first, memo):
    """Squared-magnitude terms for colorings with component 1 fixed."""
    pref_log = -2.0 * p.c * math.log(2.0 * math.sin(TWO_PI / lvl.r) / math.sqrt(lvl.r))
    terms = []
    visited = 0
    for rest in product(palette, repeat=p.k - 1):
        colors = (first,) + rest
        visited += 1
        logmag = pref_log
        dead = False
        for block in p.blocks:
            key = tuple(colors[comp - 1] for comp in block)
            val = memo.get(key)
            if val is None:
                s = Sextuple(*key)
                if not is_admissible_sextuple(s, lvl):
                    val = SignedLog.zero()
                else:
                    ckey = canonical_form(s, lvl).colors
                    val = memo.get(ckey)
                    if val is None:
                        val = sixj_symbol(Sextuple(*ckey), lvl)
                        memo[ckey] = val
                memo[key] = val
            if val.is_zero:
                dead = True
                break
            logmag += 2.0 * val.log_magnitude
        if not dead:
            terms.append(SignedLog(logmag))
    return terms, visited


def fsl_tv_log(p: FSLPresentation, lvl: Level, threads: int = 1, memo=None):
    """log of the complement invariant, plus coloring counters.

    Returns (log_value, nonzero_count, total_count): the natural log of
    2^{b2} * sum over J_r^k of |rt_invariant|^2, the number of colorings
    with a nonzero term, and the number visited (= |J_r|^k).  The log
    form stays finite at levels where the invariant itself would overflow
    a float.  Returns (-inf, 0, total) when every term vanishes.

    ``memo`` may be a pre-filled {color tuple: SignedLog} table (e.g. from
    a disk cache); it is read and extended in place.
    """
    palette = _even_palette(lvl)
    if memo is None:
        memo = {}
    # |6j| is orbit-invariant, so the canonical-form memo is shared; the
    # phase plays no role in squared magnitudes
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda f: _coloring_chunk(p, lvl, palette, f, memo), palette)
            )
    else:
        parts = [_coloring_chunk(p, lvl, palette, f, memo) for f in palette]
    terms = [t for part, _ in parts for t in part]
    total = signed_logsum(terms)
    visited = sum(v for _, v in parts)
    if total.is_zero:
        return -math.inf, 0, visited
    return p.b2 * math.log(2.0) + total.log_magnitude, len(terms), visited


def fsl_tv(p: FSLPresentation, lvl: Level, threads: int = 1) -> float:
    """2^{b2} * sum over all even colorings of |rt_invariant|^2, as a float.

    Real and nonnegative by construction.  Raises OverflowError at levels
    where the sum exceeds float range; use fsl_tv_log for growth work.
    """
    log_value, nonzero, _ = fsl_tv_log(p, lvl, threads=threads)
    if nonzero == 0:
        return 0.0
    return math.exp(log_value)


def fsl_volume(p: FSLPresentation) -> float:
    """Exact hyperbolic volume of the presentation's complement: 2*c*V8."""
    return 2.0 * p.c * V8


def attenuation(x: float) -> float:
    """(1 - (2pi/x)^2)^(3/2) for x > 2pi, else 0.

    The factor by which a Dehn-filling volume can shrink below the
    unfilled volume when the shortest filling slope has length x.
    """
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"slope length must be positive, got {x}")
    if x <= TWO_PI:
        return 0.0
    ratio = TWO_PI / x
    return (1.0 - ratio * ratio) ** 1.5


def amplification(x: float) -> float:
    """1/attenuation(x); approaches 1 as x grows.  Needs x > 2pi."""
    a = attenuation(x)
    if a == 0.0:
        raise ValueError(
            f"amplification is defined only for slope lengths above 2pi, got {x}"
        )
    return 1.0 / a


def filling_volume_bounds(ltv: float, l_min: float) -> tuple:
    """(lower, upper) volume bounds for a filled manifold.

    ``ltv`` is the exponential growth rate of the invariant of the
    unfilled manifold (nonnegative); ``l_min`` the shortest filling slope
    length.  lower = attenuation(l_min) * ltv; upper = ltv (strict).
    """
    ltv = float(ltv)
    l_min = float(l_min)
    if ltv < 0.0:
        raise ValueError(f"growth rate must be nonnegative, got {ltv}")
    if l_min <= 0.0:
        raise ValueError(f"shortest slope length must be positive, got {l_min}")
    return attenuation(l_min) * ltv, ltv
