"""Length sequences of saturated powers and their normalisations.

For each k the row holds lambda_k = length(E^k :_{F^k} m^inf / E^k), the
stabilisation index n_k, the ratio lambda_k / k^(d+e-1) and
eps_k = (d+e-1)! * lambda_k / k^(d+e-1).  All values are exact; decimals
are only produced for display.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from satpow.ideal_ops import AlgebraError, Ideal
from satpow.module_ops import (
    SubmoduleSpec,
    module_power,
    module_saturate,
    quotient_length,
    torsion_h0,
)
from satpow.monomial_oracle import (
    MonomialIdeal,
    mono_length_diff,
    mono_power,
    mono_saturate,
    mono_stabilization,
)

DEFAULT_K = 12
DEFAULT_K_MONOMIAL = 40


class DualPathMismatch(AlgebraError):
    pass


def decimal(x: Fraction, digits: int = 6) -> str:
    return f"{float(x):.{digits}g}"


@dataclass(frozen=True)
class Row:
    k: int
    lam: int
    n_k: int
    ratio: Fraction
    eps: Fraction

    @property
    def ratio_decimal(self) -> str:
        return decimal(self.ratio)

    @property
    def eps_decimal(self) -> str:
        return decimal(self.eps)


@dataclass
class Diagnostics:
    tau_hat: int
    last_delta: Fraction | None
    monotone_tail: bool
    ratio_bounded: bool


@dataclass
class AsymptoticReport:
    d: int
    e: int
    gamma: int
    rows: list
    method: str = "groebner"
    diagnostics: Diagnostics | None = field(default=None)

    def __post_init__(self):
        ks = [r.k for r in self.rows]
        if ks != sorted(set(ks)):
            raise ValueError("rows must be strictly increasing in k")
        if self.diagnostics is None:
            self.diagnostics = diagnose(self.rows)

    @property
    def exponent(self) -> int:
        return self.d + self.e - 1

    @property
    def rank_hypothesis_met(self) -> bool:
        return self.gamma < self.d + self.e

    @property
    def lambdas(self) -> list:
        return [r.lam for r in self.rows]

    @property
    def n_values(self) -> list:
        return [r.n_k for r in self.rows]

    @property
    def eps_values(self) -> list:
        return [r.eps for r in self.rows]


def make_row(k: int, lam: int, n_k: int, exponent: int) -> Row:
    ratio = Fraction(lam, k**exponent)
    return Row(k, lam, n_k, ratio, math.factorial(exponent) * ratio)


def _tail(rows, K=None):
    K = len(rows) if K is None else K
    return rows[-math.ceil(K / 3):] if rows else []


def diagnose(rows: list) -> Diagnostics:
    tau_hat = max((math.ceil(Fraction(r.n_k, r.k)) for r in rows), default=0)
    last_delta = abs(rows[-1].eps - rows[-2].eps) if len(rows) >= 2 else None
    tail = [r.eps for r in _tail(rows)]
    steps = [b - a for a, b in zip(tail, tail[1:])]
    monotone = all(s <= 0 for s in steps) or all(s >= 0 for s in steps)
    # a ratio growing at least linearly in k over the second half means the
    # normalisation exponent is wrong for this input
    bounded = True
    if len(rows) >= 4:
        mid, last = rows[len(rows) // 2], rows[-1]
        if mid.ratio > 0 and last.ratio * mid.k >= mid.ratio * last.k and last.ratio > mid.ratio:
            bounded = False
    return Diagnostics(tau_hat, last_delta, monotone, bounded)


def _as_module(E) -> SubmoduleSpec:
    if isinstance(E, Ideal):
        E = SubmoduleSpec.from_ideal(E)
    if not E.generators:
        raise ValueError("the zero module has no epsilon multiplicity")
    return E


def groebner_row(E: SubmoduleSpec, k: int, check: bool = False, cap: int | None = None):
    """(lambda_k, n_k) through the symmetric-algebra saturation."""
    try:
        Ek = module_power(E, k)
        N, n = module_saturate(Ek, cap)
        lam = quotient_length(N, Ek, n)
        if check:
            N2, n2 = torsion_h0(Ek, cap)
            if N2 != N or n2 != n:
                raise DualPathMismatch("saturation in S and torsion in F^k disagree")
            if E.is_monomial():
                o_lam, o_n = oracle_row(E, k)
                if (o_lam, o_n) != (lam, n):
                    raise DualPathMismatch(
                        f"Groebner path gives ({lam}, {n}), oracle gives ({o_lam}, {o_n})"
                    )
    except AlgebraError as exc:
        raise type(exc)(f"k={k}: {exc}") from exc
    return lam, n


def oracle_row(E: SubmoduleSpec, k: int):
    """(lambda_k, n_k) by monomial enumeration."""
    if not E.is_monomial():
        raise ValueError("the monomial fast path needs a monomial ideal")
    I = MonomialIdeal.from_ideal(E.as_ideal())
    Ik = mono_power(I, k)
    try:
        return mono_length_diff(mono_saturate(Ik), Ik), mono_stabilization(Ik)
    except AlgebraError as exc:
        raise type(exc)(f"k={k}: {exc}") from exc


def _compute(args):
    E, k, method, check, cap = args
    if method == "oracle":
        return oracle_row(E, k)
    return groebner_row(E, k, check, cap)


def run_sequence(
    E,
    K: int | None = None,
    method: str = "groebner",
    check: bool = False,
    cap: int | None = None,
    workers: int = 1,
) -> AsymptoticReport:
    """Rows k = 1..K for an ideal or a submodule of a free module."""
    E = _as_module(E)
    if method not in ("groebner", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    if K is None:
        K = DEFAULT_K_MONOMIAL if method == "oracle" else DEFAULT_K
    if K < 1:
        raise ValueError("K must be at least 1")
    e = E.rank_e
    exponent = E.dim_d + e - 1
    jobs = [(E, k, method, check, cap) for k in range(1, K + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_compute, jobs))
    else:
        results = [_compute(j) for j in jobs]
    rows = [make_row(k, lam, n, exponent) for k, (lam, n) in zip(range(1, K + 1), results)]
    return AsymptoticReport(E.dim_d, e, E.gamma, rows, method)


@dataclass(frozen=True)
class EpsilonEstimate:
    point: Fraction
    bracket: tuple
    converged: bool

    @property
    def point_decimal(self) -> str:
        return decimal(self.point)


def epsilon_estimate(report: AsymptoticReport, tol=Fraction(1, 10)) -> EpsilonEstimate:
    """Last eps_k, with the spread of the final third of the run as bracket."""
    if len(report.rows) < 3:
        raise ValueError("epsilon_estimate needs at least 3 rows")
    tail = [r.eps for r in _tail(report.rows)]
    lo, hi = min(tail), max(tail)
    return EpsilonEstimate(report.rows[-1].eps, (lo, hi), hi - lo <= Fraction(tol))


@dataclass(frozen=True)
class TauCheck:
    tau_hat: int
    linear: bool
    head_tau: int
    stable: bool
    ratio_nonincreasing: bool


def tau_check(report: AsymptoticReport, head: int = 3) -> TauCheck:
    """Empirical stabilisation slope: n_k <= tau * k.

    ``stable`` is False when some n_k exceeds ``head_tau * k``, where
    ``head_tau`` is taken over k <= ``head``.
    """
    rows = report.rows
    if len(rows) < 2:
        raise ValueError("tau_check needs at least 2 rows")
    slopes = [Fraction(r.n_k, r.k) for r in rows]
    tau_hat = max(math.ceil(s) for s in slopes)
    head_tau = max(math.ceil(s) for r, s in zip(rows, slopes) if r.k <= head)
    linear = all(r.n_k <= tau_hat * r.k for r in rows)
    stable = all(r.n_k <= head_tau * r.k for r in rows)
    beyond = [s for r, s in zip(rows, slopes) if r.k >= 2]
    nonincreasing = all(b <= a for a, b in zip(beyond, beyond[1:]))
    return TauCheck(tau_hat, linear, head_tau, stable, nonincreasing)
