"""Root-of-unity arithmetic: quantum integers, factorials, stable log sums."""

import math
import random

import numpy as np
import pytest

from sixjvol.qarith import (
    Level,
    LossOfSignificanceWarning,
    SignedLog,
    factorial_asymptotic_residual,
    quantum_factorial,
    quantum_integer,
    signed_logsum,
)
from sixjvol.lobachevsky import lobachevsky

TWO_PI = 2.0 * math.pi


# ---- Level ----------------------------------------------------------------

def test_level_rejects_bad_r():
    for bad in (4, 2, 1, 0, -5, True):
        with pytest.raises(ValueError):
            Level(bad)
    with pytest.raises(ValueError):
        Level(5.0)


def test_level_equality_and_hash():
    assert Level(7) == Level(7)
    assert Level(7) != Level(9)
    assert hash(Level(7)) == hash(Level(7))
    assert {Level(5): 1}[Level(5)] == 1


# ---- SignedLog ------------------------------------------------------------

def test_signed_log_basics():
    one = SignedLog.one()
    assert one.value() == 1.0 + 0.0j
    assert not one.is_zero
    zero = SignedLog.zero()
    assert zero.is_zero
    assert zero.value() == 0.0 + 0.0j
    # zero propagates through products
    assert (zero * one).is_zero
    assert (one * zero).is_zero


def test_signed_log_from_value_round_trip():
    v = 3.0 - 4.0j
    s = SignedLog.from_value(v)
    assert abs(s.value() - v) <= 1e-15 * abs(v)
    assert abs(s.log_magnitude - math.log(5.0)) <= 1e-15
    assert SignedLog.from_value(0.0).is_zero
    assert SignedLog.from_value(0j).is_zero


def test_signed_log_algebra():
    a = SignedLog(0.3, 1j)
    b = SignedLog(-1.1, -1.0 + 0.0j)
    prod = a * b
    assert prod.log_magnitude == a.log_magnitude + b.log_magnitude
    assert prod.phase == -1j
    quot = a / b
    assert quot.log_magnitude == a.log_magnitude - b.log_magnitude
    cube = a ** 3
    assert abs(cube.log_magnitude - 0.9) <= 1e-15
    assert abs(cube.phase - (-1j)) <= 1e-15
    conj = a.conjugate()
    assert conj.phase == -1j
    assert conj.log_magnitude == a.log_magnitude


def test_signed_log_rejects_non_unit_phase():
    with pytest.raises(ValueError):
        SignedLog(0.0, 2.0 + 0.0j)
    with pytest.raises(ValueError):
        SignedLog(1.0, 0j)


# ---- quantum integers -----------------------------------------------------

def test_quantum_integer_frozen_r5():
    lvl = Level(5)
    q1 = quantum_integer(1, lvl)
    assert q1.log_magnitude == 0.6429653906383268
    assert q1.phase == 1j
    assert q1.value() == 1.902113032590307j
    assert abs(q1.value() - 2j * math.sin(TWO_PI / 5)) == 0.0


def test_quantum_integer_vanishes_at_multiples_of_r():
    for r in (5, 7, 11):
        lvl = Level(r)
        for k in (0, r, 2 * r, -r, 3 * r):
            assert quantum_integer(k, lvl).is_zero
        for n in range(1, r):
            assert not quantum_integer(n, lvl).is_zero


def test_quantum_integer_periodicity_and_antisymmetry():
    lvl = Level(11)
    for n in range(1, 11):
        base = quantum_integer(n, lvl)
        assert quantum_integer(n + 11, lvl) == base
        assert quantum_integer(n - 22, lvl) == base
        # {r - n} = -{n}: sin flips sign across the half period
        mirror = quantum_integer(11 - n, lvl)
        assert mirror.log_magnitude == base.log_magnitude
        assert mirror.phase == -base.phase


def test_quantum_integer_matches_sine_formula():
    for r in (5, 9, 31):
        lvl = Level(r)
        for n in range(1, r):
            got = quantum_integer(n, lvl).value()
            want = 2j * math.sin(TWO_PI * n / r)
            # the table reduces the argument to the first half period, so
            # got and want round the sine at different arguments
            assert abs(got - want) <= 1e-14 * max(abs(want), 1e-3), (r, n)


# ---- quantum factorials ---------------------------------------------------

def test_quantum_factorial_base_cases():
    lvl = Level(7)
    assert quantum_factorial(0, lvl) == SignedLog.one()
    assert quantum_factorial(1, lvl) == quantum_integer(1, lvl)


def test_quantum_factorial_recurrence_exact():
    # {n+1}! and {n}! * {n+1} are built from the same cumulative table,
    # so the equality is bitwise, not approximate.
    for r in (5, 9, 13):
        lvl = Level(r)
        for n in range(0, r - 1):
            assert quantum_factorial(n + 1, lvl) == (
                quantum_factorial(n, lvl) * quantum_integer(n + 1, lvl)
            ), (r, n)


def test_quantum_factorial_vanishes_from_r_up():
    lvl = Level(9)
    for n in range(9, 19):
        assert quantum_factorial(n, lvl).is_zero


def test_quantum_factorial_rejects_out_of_range():
    lvl = Level(9)
    with pytest.raises(ValueError):
        quantum_factorial(-1, lvl)
    with pytest.raises(ValueError):
        quantum_factorial(2 * 9 + 1, lvl)


# ---- signed_logsum --------------------------------------------------------

def test_signed_logsum_identities():
    one = SignedLog.one()
    assert signed_logsum([]).is_zero
    assert signed_logsum([SignedLog.zero()]).is_zero
    single = SignedLog(0.25, -1j)
    assert signed_logsum([single]) == single

    two = signed_logsum([one, one])
    assert abs(two.log_magnitude - math.log(2.0)) <= 1e-15
    assert two.phase == 1.0 + 0.0j

    cancel = signed_logsum([one, SignedLog(0.0, -1.0 + 0.0j)])
    assert cancel.is_zero


def test_signed_logsum_mixed_axes():
    # 1 + i has magnitude sqrt(2) and phase on the diagonal
    s = signed_logsum([SignedLog.one(), SignedLog(0.0, 1j)])
    assert abs(s.value() - (1.0 + 1.0j)) <= 1e-15


def test_signed_logsum_permutation_invariant():
    rng = random.Random(20260818)
    terms = [
        SignedLog(rng.uniform(-8.0, 3.0), (1j) ** rng.randrange(4))
        for _ in range(60)
    ]
    base = signed_logsum(terms)
    for _ in range(5):
        shuffled = terms[:]
        rng.shuffle(shuffled)
        assert signed_logsum(shuffled) == base


def test_signed_logsum_rejects_off_axis_phase():
    diag = SignedLog(0.0, complex(math.cos(0.7), math.sin(0.7)))
    with pytest.raises(ValueError):
        signed_logsum([SignedLog.one(), diag])


def test_signed_logsum_warns_on_lost_significance():
    # two nearly equal terms of opposite sign: ~1e-12 of the mass survives
    terms = [
        SignedLog(0.0, 1.0 + 0.0j),
        SignedLog(math.log1p(-1e-12), -1.0 + 0.0j),
    ]
    with pytest.warns(LossOfSignificanceWarning):
        s = signed_logsum(terms)
    assert not s.is_zero
    assert s.log_magnitude < math.log(1e-11)


# ---- factorial asymptotics ------------------------------------------------

def test_factorial_residual_frozen_r5():
    lvl = Level(5)
    assert factorial_asymptotic_residual(1, lvl) == 0.8120984822231022
    assert factorial_asymptotic_residual(4, lvl) == 1.4403048208493252


def test_factorial_residual_definition():
    for r, n in ((7, 3), (31, 11), (101, 60)):
        lvl = Level(r)
        direct = quantum_factorial(n, lvl).log_magnitude + (
            r / TWO_PI
        ) * lobachevsky(TWO_PI * n / r)
        assert abs(factorial_asymptotic_residual(n, lvl) - direct) <= 1e-12, (r, n)


def test_factorial_residual_rejects_endpoints():
    lvl = Level(7)
    for n in (0, 7, -1, 8):
        with pytest.raises(ValueError):
            factorial_asymptotic_residual(n, lvl)


def test_factorial_residual_log_bound_r101():
    # the acceptance suite sweeps every odd r <= 501 with the same constant
    lvl = Level(101)
    worst = max(
        abs(factorial_asymptotic_residual(n, lvl)) for n in range(1, 101)
    )
    assert worst <= 1.25 * math.log(101)


def test_quantum_factorial_magnitude_table_consistency():
    # |{n}!| equals the plain product of |2 sin(2 pi k / r)|
    lvl = Level(13)
    for n in range(1, 13):
        want = math.fsum(
            math.log(2.0 * abs(math.sin(TWO_PI * k / 13))) for k in range(1, n + 1)
        )
        assert abs(quantum_factorial(n, lvl).log_magnitude - want) <= 1e-12 * max(
            1.0, abs(want)
        )
