"""6j-symbol evaluation, admissibility, symmetry orbit, exhaustive scan."""

import itertools
import json
import math
import random

import pytest

from sixjvol.qarith import Level
from sixjvol.sixj import (
    ScanReport,
    Sextuple,
    Triple,
    bound_scan,
    canonical_form,
    delta_triple,
    is_admissible_sextuple,
    is_admissible_triple,
    sixj_growth,
    sixj_symbol,
    sixj_symbol_mp,
)

import oracles

TWO_PI = 2.0 * math.pi


def _random_admissible(r, count, seed):
    """Seeded sample of admissible sextuples, nonzero symbol guaranteed."""
    lvl = Level(r)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cand = Sextuple(*(rng.randrange(0, r - 1) for _ in range(6)))
        if not is_admissible_sextuple(cand, lvl):
            continue
        if sixj_symbol(cand, lvl).is_zero:
            continue
        out.append(cand)
    return out


# ---- containers -----------------------------------------------------------

def test_sextuple_validation():
    with pytest.raises(ValueError):
        Sextuple(-1, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        Sextuple(1.5, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        Sextuple(True, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        Sextuple.from_iterable([1, 2, 3])
    s = Sextuple.from_iterable((2, 2, 2, 2, 2, 2))
    assert s.colors == (2, 2, 2, 2, 2, 2)
    assert s.total == 12


def test_sextuple_half_sums():
    s = Sextuple(1, 2, 3, 4, 5, 6)
    # faces (1,2,3), (1,5,6), (2,4,6), (3,4,5)
    assert s.face_half_sums == (3, 6, 6, 6)
    assert s.quad_half_sums == (6, 7, 8)


# ---- admissibility --------------------------------------------------------

def test_triple_admissibility_cases():
    lvl = Level(5)
    assert not is_admissible_triple(Triple(1, 1, 1), lvl)  # odd sum
    assert is_admissible_triple(Triple(1, 1, 2), lvl)
    assert not is_admissible_triple(Triple(3, 3, 3), lvl)  # sum over 2r-4
    assert is_admissible_triple(Triple(0, 0, 0), lvl)
    # triangle inequality violations
    assert not is_admissible_triple(Triple(0, 0, 2), lvl)
    assert not is_admissible_triple(Triple(0, 1, 3), Level(7))


def test_sextuple_admissibility_cases():
    assert is_admissible_sextuple(Sextuple(0, 0, 0, 0, 0, 0), Level(5))
    assert is_admissible_sextuple(Sextuple(2, 2, 2, 2, 2, 2), Level(5))
    assert not is_admissible_sextuple(Sextuple(4, 4, 4, 4, 4, 4), Level(7))
    assert is_admissible_sextuple(Sextuple(4, 4, 4, 4, 4, 4), Level(9))


def test_admissibility_matches_naive_oracle():
    for r in (5, 7):
        lvl = Level(r)
        ours = {
            c
            for c in itertools.product(range(r - 1), repeat=6)
            if is_admissible_sextuple(Sextuple(*c), lvl)
        }
        assert ours == set(oracles.naive_admissible_tuples(r))


# ---- triangle factor ------------------------------------------------------

def test_delta_triple_identity():
    for r in (5, 9):
        d = delta_triple(Triple(0, 0, 0), Level(r))
        assert abs(d.value() - 1.0) <= 1e-15


def test_delta_triple_rejects_inadmissible():
    with pytest.raises(ValueError):
        delta_triple(Triple(1, 1, 1), Level(5))


def test_delta_triple_against_oracle():
    for r, t in ((7, (2, 2, 2)), (9, (2, 4, 4)), (11, (6, 4, 2))):
        got = delta_triple(Triple(*t), Level(r)).value()
        want = oracles.mp_delta(*t, r)
        assert abs(got - want) <= 1e-13 * max(abs(want), 1e-6), (r, t)


# ---- the symbol -----------------------------------------------------------

def test_sixj_all_zero_is_imaginary_unit():
    for r in (5, 7, 31):
        v = sixj_symbol(Sextuple(0, 0, 0, 0, 0, 0), Level(r))
        assert v.value() == 1j
        assert v.log_magnitude == 0.0


def test_sixj_frozen_values():
    v7 = sixj_symbol(Sextuple(2, 2, 2, 2, 2, 2), Level(7))
    assert v7.value() == 5.85085507532714j
    assert v7.log_magnitude == 1.7665878172850387
    v9 = sixj_symbol(Sextuple(2, 4, 2, 2, 4, 4), Level(9))
    assert v9.value() == -5.41147412780977j


def test_sixj_rejects_inadmissible():
    with pytest.raises(ValueError):
        sixj_symbol(Sextuple(1, 1, 1, 1, 1, 1), Level(5))


def test_sixj_against_mp_oracle():
    cases = [((2, 2, 2, 2, 2, 2), 7), ((2, 4, 2, 2, 4, 4), 9)]
    cases += [(s.colors, 9) for s in _random_admissible(9, 6, seed=101)]
    cases += [(s.colors, 31) for s in _random_admissible(31, 6, seed=202)]
    for colors, r in cases:
        got = sixj_symbol(Sextuple(*colors), Level(r)).value()
        want = oracles.mp_sixj(colors, r)
        assert abs(got - want) <= 1e-11 * max(abs(want), 1e-9), (colors, r)


def test_admissibility_forces_nonempty_z_range():
    # every quad half-sum exceeds every face half-sum by a triangle defect
    # of the opposite face, so admissible tuples always have summation
    # terms; the defensive zero branch cannot fire on valid input.  No
    # admissible tuple at r <= 9 cancels to an exact zero either.
    lvl = Level(7)
    for c in itertools.product(range(6), repeat=6):
        s = Sextuple(*c)
        if not is_admissible_sextuple(s, lvl):
            continue
        assert min(s.quad_half_sums) >= max(s.face_half_sums), c
        assert not sixj_symbol(s, lvl).is_zero, c


def test_sixj_extended_precision_agrees():
    for colors, r in (((2, 2, 2, 2, 2, 2), 7), ((4, 4, 4, 4, 4, 4), 11)):
        std = sixj_symbol(Sextuple(*colors), Level(r))
        ext = sixj_symbol_mp(Sextuple(*colors), Level(r), dps=60)
        rel = abs(std.log_magnitude - ext.log_magnitude) / max(
            1.0, abs(ext.log_magnitude)
        )
        assert rel <= 1e-13
        assert abs(std.phase - ext.phase) <= 1e-12


def test_sixj_growth_definition():
    lvl = Level(7)
    s = Sextuple(2, 2, 2, 2, 2, 2)
    g = sixj_growth(s, lvl)
    assert g == (TWO_PI / 7) * sixj_symbol(s, lvl).log_magnitude
    assert g == 1.5856855167725443
    assert sixj_growth(Sextuple(0, 0, 0, 0, 0, 0), lvl) == 0.0


# ---- symmetry -------------------------------------------------------------

def _substitution_images(colors, r):
    """The two color-reversal substitutions: bottom row, and columns 1,2."""
    n1, n2, n3, n4, n5, n6 = colors
    p = r - 2
    return (
        (n1, n2, n3, p - n4, p - n5, p - n6),
        (p - n1, p - n2, n3, p - n4, p - n5, n6),
    )


def test_substitution_images_preserve_magnitude():
    lvl = Level(31)
    for s in _random_admissible(31, 200, seed=31415):
        base = sixj_symbol(s, lvl)
        for img in _substitution_images(s.colors, 31):
            simg = Sextuple(*img)
            assert is_admissible_sextuple(simg, lvl), (s.colors, img)
            other = sixj_symbol(simg, lvl)
            rel = abs(base.log_magnitude - other.log_magnitude) / max(
                1.0, abs(base.log_magnitude)
            )
            assert rel <= 1e-9, (s.colors, img)
            # the square-root branch in the triangle factors makes the
            # substitution a magnitude symmetry only: the value may flip sign
            ratio = other.phase / base.phase
            assert min(abs(ratio - 1.0), abs(ratio + 1.0)) <= 1e-9, (s.colors, img)


def _orbit_by_closure(colors, r):
    """Orbit under column permutations, double flips, and substitutions."""
    def images(c):
        n1, n2, n3, n4, n5, n6 = c
        yield (n2, n1, n3, n5, n4, n6)        # swap columns 1,2
        yield (n2, n3, n1, n5, n6, n4)        # cycle columns
        yield (n4, n5, n3, n1, n2, n6)        # flip top/bottom in columns 1,2
        yield from _substitution_images(c, r)

    seen = {tuple(colors)}
    frontier = [tuple(colors)]
    while frontier:
        nxt = []
        for c in frontier:
            for img in images(c):
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def test_canonical_form_constant_on_orbit():
    lvl = Level(31)
    for s in _random_admissible(31, 25, seed=271828):
        orbit = _orbit_by_closure(s.colors, 31)
        assert 192 % len(orbit) == 0, (s.colors, len(orbit))
        canon = canonical_form(s, lvl)
        assert canon.colors == min(orbit)
        for member in orbit:
            assert canonical_form(Sextuple(*member), lvl) == canon


def test_canonical_form_fixed_point():
    assert canonical_form(Sextuple(0, 0, 0, 0, 0, 0), Level(5)).colors == (
        0, 0, 0, 0, 0, 0,
    )


# ---- exhaustive scan ------------------------------------------------------

def test_bound_scan_r5():
    report = bound_scan(Level(5))
    assert report.count_admissible == 120
    assert report.max_growth == 1.209417227542229
    assert report.argmax.colors == (1, 1, 2, 1, 1, 2)


def test_bound_scan_r7():
    report = bound_scan(Level(7))
    assert report.count_admissible == 784
    assert report.max_growth == 1.5856855167725443
    # (4,...,4) is inadmissible at r=7, so the true argmax is reported as-is
    assert report.argmax.colors == (2, 2, 2, 2, 2, 2)


def test_bound_scan_counts_match_naive_oracle():
    for r in (5, 7):
        report = bound_scan(Level(r))
        assert report.count_admissible == len(oracles.naive_admissible_tuples(r))


def test_bound_scan_max_matches_scalar_path():
    report = bound_scan(Level(9))
    assert report.max_growth == sixj_growth(report.argmax, Level(9))


def test_bound_scan_report_serialization():
    report = bound_scan(Level(7))
    doc = json.loads(report.to_json())
    assert doc == report.to_json_dict()
    assert doc["r"] == 7
    assert doc["count_admissible"] == 784
    assert doc["argmax"] == [2, 2, 2, 2, 2, 2]
    assert sum(doc["histogram"].values()) == 784
    assert doc["max_growth"] == 1.5856855167725443


def test_bound_scan_ceiling():
    with pytest.raises(ValueError):
        bound_scan(Level(19))
    with pytest.raises(ValueError):
        bound_scan(Level(7), ceiling=5)
    report = bound_scan(Level(7), ceiling=5, override=True)
    assert report.count_admissible == 784


def test_bound_scan_thread_determinism():
    lvl = Level(9)
    one = bound_scan(lvl, threads=1)
    three = bound_scan(lvl, threads=3)
    assert one.to_json() == three.to_json()
