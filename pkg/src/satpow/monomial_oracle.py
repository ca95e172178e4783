"""Combinatorial power, colon, saturation and length for monomial ideals.

Nothing here touches Groebner bases; it is the independent check for the
algebraic path and the fast path for long monomial runs.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations_with_replacement, product

from satpow.ideal_ops import Ideal
from satpow.module_ops import InfiniteLengthError
from satpow.polycore import Ring


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> frozenset:
    out = []
    for g in sorted(set(gens), key=sum):
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return frozenset(out)


class MonomialIdeal:
    """A monomial ideal in ``nvars`` variables, kept as minimal generators."""

    __slots__ = ("nvars", "gens")

    def __init__(self, nvars: int, gens=()):
        gens = [tuple(g) for g in gens]
        if any(len(g) != nvars for g in gens):
            raise ValueError("exponent vector of the wrong length")
        self.nvars = nvars
        self.gens = minimalize(gens)

    @classmethod
    def from_ideal(cls, I: Ideal) -> "MonomialIdeal":
        if not I.is_monomial():
            raise ValueError("not a monomial ideal")
        return cls(I.ring.ngens, [next(iter(g._c)) for g in I.generators])

    def to_ideal(self, ring: Ring) -> Ideal:
        return Ideal(ring, [ring.monomial(g) for g in self.sorted_gens()])

    def sorted_gens(self) -> list:
        return sorted(self.gens, key=lambda g: (sum(g), tuple(-a for a in g)))

    def unit(self) -> bool:
        return (0,) * self.nvars in self.gens

    def __contains__(self, u) -> bool:
        return any(_divides(g, u) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __le__(self, other: "MonomialIdeal") -> bool:
        return all(g in other for g in self.gens)

    def __repr__(self):
        return f"MonomialIdeal({self.sorted_gens()})"


def mono_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k == 0:
        return MonomialIdeal(I.nvars, [(0,) * I.nvars])
    gens = sorted(I.gens)
    prods = (
        tuple(map(sum, zip(*combo))) for combo in combinations_with_replacement(gens, k)
    )
    return MonomialIdeal(I.nvars, prods)


def mono_intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(
        I.nvars, [tuple(map(max, a, b)) for a in I.gens for b in J.gens]
    )


def mono_colon_var(I: MonomialIdeal, i: int) -> MonomialIdeal:
    return MonomialIdeal(
        I.nvars, [g[:i] + (max(g[i] - 1, 0),) + g[i + 1 :] for g in I.gens]
    )


def mono_colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J as the intersection of I : u over generators u of J."""
    parts = [
        MonomialIdeal(I.nvars, [tuple(max(a - b, 0) for a, b in zip(g, u)) for g in I.gens])
        for u in J.gens
    ]
    return reduce(mono_intersect, parts)


def mono_saturate(I: MonomialIdeal) -> MonomialIdeal:
    """Intersection over i of I : x_i^inf (zero the i-th exponent)."""
    if not I.gens:
        return I
    parts = [
        MonomialIdeal(I.nvars, [g[:i] + (0,) + g[i + 1 :] for g in I.gens])
        for i in range(I.nvars)
    ]
    return reduce(mono_intersect, parts)


def _threshold(I: MonomialIdeal, prefix) -> float:
    """Least last exponent putting prefix + (e,) in I (inf if none)."""
    best = float("inf")
    for g in I.gens:
        if g[-1] < best and _divides(g[:-1], prefix):
            best = g[-1]
    return best


def _difference(N: MonomialIdeal, I: MonomialIdeal, bounds) -> list:
    """Monomials of N outside I with every exponent below ``bounds``."""
    out = []
    last = bounds[-1]
    for prefix in product(*(range(b) for b in bounds[:-1])):
        lo = _threshold(N, prefix)
        hi = min(_threshold(I, prefix), last)
        if lo < hi:
            out.extend(prefix + (e,) for e in range(int(lo), int(hi)))
    return out


def mono_difference(N: MonomialIdeal, I: MonomialIdeal) -> list:
    """All monomials in N but not in I; raises if there are infinitely many.

    A monomial u outside I with x_i^n u in I for every i has each exponent
    u_i below the largest i-th exponent among the generators of I, so that
    box holds the whole difference when N/I is torsion.  The count is
    audited on a box one larger in every direction.
    """
    if not I <= N:
        raise ValueError("I is not contained in N")
    if N.nvars == 0:
        return []
    bounds = [max((g[i] for g in I.gens), default=0) + 1 for i in range(I.nvars)]
    inside = _difference(N, I, bounds)
    audit = _difference(N, I, [b + 1 for b in bounds])
    if len(audit) != len(inside):
        raise InfiniteLengthError("monomial count does not stabilise; N/I is not torsion")
    return inside


def mono_length_diff(N: MonomialIdeal, I: MonomialIdeal) -> int:
    return len(mono_difference(N, I))


def mono_stabilization(I: MonomialIdeal) -> int:
    """Least n with I : m^n = I : m^inf.

    This is 1 + max(deg v - deg u) over pairs u | v in sat(I) minus I.
    """
    N = mono_saturate(I)
    diff = set(mono_difference(N, I))
    if not diff:
        return 0
    top = {}
    for u in sorted(diff, key=sum, reverse=True):
        best = sum(u)
        for i in range(len(u)):
            v = u[:i] + (u[i] + 1,) + u[i + 1 :]
            if v in diff:
                best = max(best, top[v])
        top[u] = best
    return 1 + max(top[u] - sum(u) for u in diff)


def mono_saturate_colon(I: MonomialIdeal, cap: int = 10_000):
    """Saturation by literal iteration of I : m, with the step count."""
    m = MonomialIdeal(I.nvars, [tuple(int(j == i) for j in range(I.nvars)) for i in range(I.nvars)])
    J = I
    for n in range(cap + 1):
        nxt = mono_colon(J, m)
        if nxt == J:
            return J, n
        J = nxt
    raise RuntimeError("cap exceeded")
