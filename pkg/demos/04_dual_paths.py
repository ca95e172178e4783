"""Cross-checks between independent routes on a random monomial corpus.

Each ideal is saturated by iterated colons and by elimination, and its
saturated powers are measured both with Groebner bases and by counting
monomials.
"""

import random

from satpow import Ideal, Ring, saturate_colon, saturate_elim
from satpow.asymptotics import groebner_row, oracle_row
from satpow.module_ops import SubmoduleSpec

rng = random.Random(1)
R = Ring(("x", "y", "z"))


def random_ideal():
    gens = []
    for _ in range(rng.randint(2, 4)):
        e = [0, 0, 0]
        for _ in range(rng.randint(2, 4)):
            e[rng.randrange(3)] += 1
        gens.append(R.monomial(e))
    return Ideal(R, gens)


x, y, z = R.gens()
# I^2 already has torsion here; the rest are random
corpus = [Ideal(R, [x**2 * y**2, x * y**2 * z, x * y * z**2])]
corpus += [random_ideal() for _ in range(8)]

for I in corpus:
    A, n = saturate_colon(I)
    assert A == saturate_elim(I)
    E = SubmoduleSpec.from_ideal(I)
    rows = [groebner_row(E, k, check=True) for k in (1, 2, 3)]
    assert rows == [oracle_row(E, k) for k in (1, 2, 3)]
    print(f"{str(I):40s} sat = {str(A):28s} (lambda, n_k) = {rows}")
