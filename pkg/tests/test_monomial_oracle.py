import random
from itertools import product

import pytest

from satpow.module_ops import InfiniteLengthError
from satpow.monomial_oracle import (
    MonomialIdeal,
    _difference,
    mono_colon,
    mono_intersect,
    mono_length_diff,
    mono_power,
    mono_saturate,
    mono_saturate_colon,
    mono_stabilization,
)

from conftest import random_monomial_ideal_gens


def M(*gens):
    return MonomialIdeal(len(gens[0]), gens)


def test_power_examples():
    I = M((2, 0), (1, 1))
    assert mono_power(I, 3) == M((6, 0), (5, 1), (4, 2), (3, 3))
    assert mono_power(M((1, 0)), 5) == M((5, 0))
    m3 = mono_power(M((1, 0, 0), (0, 1, 0), (0, 0, 1)), 3)
    assert len(m3.gens) == 10 and all(sum(g) == 3 for g in m3.gens)


def test_saturate_examples():
    assert mono_saturate(M((2, 0), (1, 1))) == M((1, 0))
    assert mono_saturate(mono_power(M((1, 0), (0, 1)), 2)).unit()
    assert mono_saturate(M((1, 1))) == M((1, 1))


def test_length_examples():
    assert mono_length_diff(M((1, 0)), M((2, 0), (1, 1))) == 1
    unit = M((0, 0))
    m = M((1, 0), (0, 1))
    for k in range(1, 6):
        assert mono_length_diff(unit, mono_power(m, 2 * k)) == k * (2 * k + 1)
    I = M((2, 1), (0, 3))
    assert mono_length_diff(I, I) == 0


def test_infinite_length_detected():
    with pytest.raises(InfiniteLengthError):
        mono_length_diff(M((0, 0)), M((1, 0)))


def test_colon_and_intersect():
    assert mono_colon(M((2, 0), (1, 1)), M((1, 0), (0, 1))) == M((1, 0))
    assert mono_intersect(M((2, 0), (0, 1)), M((1, 0))) == M((2, 0), (1, 1))


def test_minimality_random():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.choice([2, 3])
        I = MonomialIdeal(n, random_monomial_ideal_gens(rng, n))
        for J in (I, mono_power(I, 2), mono_saturate(I)):
            for a in J.gens:
                for b in J.gens:
                    if a != b:
                        assert not all(x <= y for x, y in zip(a, b))


def test_box_is_large_enough_random():
    # counting on a much larger box gives the same difference
    rng = random.Random(11)
    for _ in range(30):
        n = rng.choice([2, 3])
        I = mono_power(MonomialIdeal(n, random_monomial_ideal_gens(rng, n)), rng.randint(1, 3))
        N = mono_saturate(I)
        big = [max(g[i] for g in I.gens) + 6 for i in range(n)]
        assert mono_length_diff(N, I) == len(_difference(N, I, big))


def test_stabilization_matches_literal_colon_iteration():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.choice([2, 3])
        I = mono_power(MonomialIdeal(n, random_monomial_ideal_gens(rng, n)), rng.randint(1, 3))
        N, steps = mono_saturate_colon(I)
        assert N == mono_saturate(I)
        assert steps == mono_stabilization(I)


def test_saturation_is_brute_force_torsion():
    # u in sat(I) iff every x_i^D u lies in I for large D
    rng = random.Random(2)
    for _ in range(20):
        I = MonomialIdeal(2, random_monomial_ideal_gens(rng, 2))
        N = mono_saturate(I)
        D = 10
        for u in product(range(6), repeat=2):
            torsion = (u[0] + D, u[1]) in I and (u[0], u[1] + D) in I
            assert (u in N) == torsion
