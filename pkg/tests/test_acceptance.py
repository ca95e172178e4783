"""Acceptance suite.  Each test prints one PASS/FAIL line for its criterion;
the lines are repeated in the terminal summary (see conftest.py).

    pytest tests/test_acceptance.py -s
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from satpow.asymptotics import epsilon_estimate, oracle_row, run_sequence, tau_check
from satpow.groebner import buchberger
from satpow.ideal_ops import Ideal, hilbert_count, ideal_power, saturate_colon, saturate_elim
from satpow.module_ops import (
    SubmoduleSpec,
    module_power,
    module_saturate,
    quotient_length,
    torsion_h0,
)
from satpow.polycore import Ring, VecPoly

from conftest import random_monomial_ideal_gens, random_poly

RESULTS = {}
SEED = 20261016
NAMES = ("x", "y", "z")


@contextmanager
def criterion(n: int, title: str):
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        line = f"FAIL  criterion {n}: {title} ({type(exc).__name__}: {exc})"
        RESULTS[n] = line
        print("\n" + line)
        raise
    extra = "".join(f", {k}={v}" for k, v in detail.items())
    line = f"PASS  criterion {n}: {title} [{time.perf_counter() - start:.1f}s{extra}]"
    RESULTS[n] = line
    print("\n" + line)


def monomial_corpus(size=50, seed=SEED):
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        nv = rng.choice([1, 2, 2, 3, 3, 3])
        R = Ring(NAMES[:nv])
        gens = random_monomial_ideal_gens(rng, nv, max_gens=5, max_deg=4)
        out.append(Ideal(R, [R.monomial(g) for g in gens]))
    return out


CORPUS = monomial_corpus()


def hand_picked():
    R2, R3 = Ring(NAMES[:2]), Ring(NAMES)
    x, y = R2.gens()
    X, Y, Z = R3.gens()
    m2 = [x, y]
    m3 = [X, Y, Z]
    return [
        Ideal(R2, [x**2 - y**2, x * y]),
        Ideal(R2, [(x + y) * v for v in m2]),
        Ideal(R2, [(x**2 + y**2) * v for v in m2]),
        Ideal(R2, [x**3, x**2 * y - y**3]),
        Ideal(R3, [(X * Z - Y**2) * v for v in m3]),
        Ideal(R3, [X**2 - Y * Z, X * Y - Z**2, Y**2 - X * Z]),
        Ideal(R3, [X**2 + Y * Z, Y**2, X * Z]),
        Ideal(R3, [(X - Y) ** 2, (X - Y) * Z, Z**2]),
        Ideal(R3, [(X + Y + Z) * u * v for u in m3 for v in m3]),
        Ideal(R3, [(X * Y - 2 * Z**2) * v for v in (X, Y)] + [X**3 * Z - Y**2 * Z**2]),
    ]


def test_1_closed_form_ideal():
    with criterion(1, "(x^2,xy): lambda_k = k(k+1)/2, eps_k = (k+1)/k, k<=12") as info:
        R = Ring(NAMES[:2])
        x, y = R.gens()
        I = Ideal(R, [x**2, x * y])
        t0 = time.perf_counter()
        rep = run_sequence(I, 12, method="groebner")
        elapsed = time.perf_counter() - t0
        assert rep.lambdas == [k * (k + 1) // 2 for k in range(1, 13)]
        assert rep.eps_values == [Fraction(k + 1, k) for k in range(1, 13)]
        est = epsilon_estimate(rep)
        assert abs(est.point - 1) <= Fraction(9, 100)
        fast = run_sequence(I, 12, method="oracle")
        assert [(r.k, r.lam, r.n_k, r.ratio, r.eps) for r in fast.rows] == [
            (r.k, r.lam, r.n_k, r.ratio, r.eps) for r in rep.rows
        ]
        assert elapsed < 60
        info["eps_12"] = est.point
        info["groebner_s"] = f"{elapsed:.2f}"


def test_2_m_primary():
    with criterion(2, "(x,y)^2: lambda_k = k(2k+1), k<=10; eps(K=20) within 10% of 4") as info:
        R = Ring(NAMES[:2])
        x, y = R.gens()
        I = Ideal(R, [x**2, x * y, y**2])
        rep = run_sequence(I, 10)
        assert rep.lambdas == [k * (2 * k + 1) for k in range(1, 11)]
        # independent count: for an m-primary ideal lambda_k is the colength of I^k
        for k in (1, 4, 10):
            Ik = ideal_power(I, k)
            assert sum(hilbert_count(Ik, t) for t in range(2 * k + 1)) == k * (2 * k + 1)
        est = epsilon_estimate(run_sequence(I, 20, method="oracle"))
        assert abs(est.point - 4) <= Fraction(4, 10)
        info["eps_20"] = est.point_decimal


def test_3_zero_case():
    with criterion(3, "principal ideals and direct summands: lambda_k = 0, k<=10") as info:
        R2, R3 = Ring(NAMES[:2]), Ring(NAMES)
        x, y = R2.gens()
        X, Y, Z = R3.gens()
        cases = [
            Ideal(R2, [x]),
            Ideal(R2, [x**2 + x * y]),
            Ideal(R2, [x * y - 1]),
            Ideal(R3, [X * Y * Z + Z**3]),
            SubmoduleSpec(R2, 2, [VecPoly(R2, [1, 0])]),
            SubmoduleSpec(R2, 2, [VecPoly(R2, [1, x])]),
            SubmoduleSpec(R2, 2, [VecPoly(R2, [1, 0]), VecPoly(R2, [0, 1])]),
            SubmoduleSpec(R3, 3, [VecPoly(R3, [1, X, Y]), VecPoly(R3, [0, 1, Z])]),
        ]
        for E in cases:
            rep = run_sequence(E, 10)
            assert rep.lambdas == [0] * 10, E
            assert all(e == 0 for e in rep.eps_values)
            assert epsilon_estimate(rep).point == 0
        info["cases"] = len(cases)


def test_4_module_case():
    with criterion(4, "E=((x,0),(y,0)): lambda_k = k(k+1)/2, k<=8; eps -> 1") as info:
        R = Ring(NAMES[:2])
        x, y = R.gens()
        E = SubmoduleSpec(R, 2, [VecPoly(R, [x, 0]), VecPoly(R, [y, 0])])
        rep = run_sequence(E, 8, check=True)
        assert (rep.d, rep.e, rep.gamma) == (2, 1, 2)
        assert rep.rank_hypothesis_met
        assert rep.lambdas == [k * (k + 1) // 2 for k in range(1, 9)]
        assert rep.eps_values == [Fraction(k + 1, k) for k in range(1, 9)]
        eps = rep.eps_values
        assert all(abs(b - 1) < abs(a - 1) for a, b in zip(eps, eps[1:]))
        info["eps_8"] = eps[-1]
        info["rank_hypothesis_met"] = rep.rank_hypothesis_met


def test_5_dual_path_corpus():
    with criterion(5, f"dual path on {len(CORPUS)} random monomial ideals, k<=4") as info:
        assert len(CORPUS) >= 50
        agree = 0
        for I in CORPUS:
            E = SubmoduleSpec.from_ideal(I)
            for k in range(1, 5):
                Ek = module_power(E, k)
                N, n = module_saturate(Ek)
                N2, n2 = torsion_h0(Ek)
                assert N == N2 and n == n2, (I, k)
                lam = quotient_length(N, Ek, n)
                assert (lam, n) == oracle_row(E, k), (I, k)
                agree += 1
        info["agreements"] = f"{agree}/{4 * len(CORPUS)}"


def test_6_saturation_two_paths():
    items = CORPUS + hand_picked()
    with criterion(6, f"saturate_colon == saturate_elim on {len(items)} ideals") as info:
        for I in items:
            A, _ = saturate_colon(I)
            B = saturate_elim(I)
            assert A.generators == B.generators, I
        info["non_monomial"] = len(items) - len(CORPUS)


def test_7_linear_stabilization():
    with criterion(7, "n_k <= head_tau * k on every corpus item") as info:
        flags_monotone = flags_head = 0
        for I in CORPUS:
            rep = run_sequence(I, 8, method="oracle")
            tc = tau_check(rep)
            assert tc.linear
            assert tc.stable, (I, rep.n_values)
            flags_monotone += not tc.ratio_nonincreasing
            flags_head += tc.head_tau != tc.tau_hat
        info["flag_n_k/k_rises"] = flags_monotone
        info["flag_max_after_k3"] = flags_head


def _ideal_instance(rng):
    nv = rng.choice([2, 2, 3])
    R = Ring(NAMES[:nv])
    hom = rng.random() < 0.5
    gens = [
        random_poly(rng, R, nterms=rng.randint(1, 3), maxdeg=3 if nv == 2 else 2, homogeneous=hom)
        for _ in range(rng.randint(1, 3))
    ]
    return R, None, [g for g in gens if g]


def _module_instance(rng):
    R = Ring(NAMES[:2])
    gens = [
        VecPoly(R, [random_poly(rng, R, nterms=2, maxdeg=2) for _ in range(2)])
        for _ in range(rng.randint(1, 3))
    ]
    return R, 2, [g for g in gens if not g.is_zero()]


def test_8_algebra_kernel():
    with criterion(8, "Buchberger criterion + NF linearity (200), canonicity (50)") as info:
        rng = random.Random(SEED + 8)
        n_modules = 0
        for i in range(200):
            R, rank, gens = (_module_instance if i % 5 == 4 else _ideal_instance)(rng)
            if not gens:
                continue
            n_modules += rank is not None
            gb = buchberger(gens, ring=R, rank=rank)
            assert gb.s_pairs_reduce_to_zero()
            assert all(gb.contains(g) for g in gens)
            if rank is None:
                f, g = random_poly(rng, R, 4, 3), random_poly(rng, R, 4, 3)
            else:
                f, g = _module_instance(rng)[2][0], _module_instance(rng)[2][0]
            a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), rng.randint(-3, 3)
            lhs = gb.normal_form(f * a + g * b)
            rhs = gb.normal_form(f) * a + gb.normal_form(g) * b
            assert lhs == rhs
            assert gb.normal_form(gb.normal_form(f)) == gb.normal_form(f)
        for _ in range(50):
            R, _, gens = _ideal_instance(rng)
            while len(gens) < 2:
                R, _, gens = _ideal_instance(rng)
            g1, g2, *rest = gens
            q = random_poly(rng, R, 2, 1)
            c = rng.randint(1, 4)
            # a unimodular change of generators plus a redundant product
            other = [g2 + q * g1, c * g1] + [h - g1 * g2 for h in rest] + [g1 * g2 * q]
            rng.shuffle(other)
            A = buchberger(gens, ring=R)
            B = buchberger(other, ring=R)
            assert A.elements == B.elements
        info["modules"] = n_modules


def test_zz_summary():
    print()
    for n in range(1, 9):
        print(RESULTS.get(n, f"NOT RUN criterion {n}"))
    assert not any(line.startswith("FAIL") for line in RESULTS.values())


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
