"""Ideals of Q[x_1..x_d]: powers, intersections, colons and saturation.

Saturation is always taken with respect to an ideal generated by variables
(by default all of them, i.e. the maximal ideal at the origin).  Two
independent procedures are provided: iterated colons by ``m`` and
elimination of ``1 - t*x_i``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from satpow.groebner import GroebnerBasis, buchberger
from satpow.polycore import Order, Poly, Ring, RingMismatchError


class AlgebraError(RuntimeError):
    """Raised when a computation cannot complete (caps, infinite lengths)."""


class SaturationCapError(AlgebraError):
    pass


class Ideal:
    """A finitely generated ideal with a lazily computed reduced basis."""

    def __init__(self, ring: Ring, generators: Iterable = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Poly):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            if g and g not in gens:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = None

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.generators, ring=self.ring)
        return self._gb

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced Groebner basis."""
        J = Ideal(self.ring, self.gb.elements)
        J._gb = self._gb
        return J

    def contains(self, f) -> bool:
        if not isinstance(f, Poly):
            f = self.ring.const(f)
        return self.gb.contains(f)

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def max_degree(self) -> int:
        return max((g.total_degree() for g in self.generators), default=0)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash(self.gb)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __pow__(self, k: int) -> "Ideal":
        return ideal_power(self, k)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


IdealRep = Ideal


def maximal_ideal(ring: Ring, variables: Sequence[int] | None = None) -> Ideal:
    if variables is None:
        variables = range(ring.ngens)
    return Ideal(ring, [ring.var(i) for i in variables])


def ideal_power(I: Ideal, k: int) -> Ideal:
    """I^k generated by all k-fold products of generators."""
    if k < 1:
        raise ValueError("ideal_power needs k >= 1")
    gens = I.generators
    prods = []
    for combo in combinations_with_replacement(range(len(gens)), k):
        p = I.ring.one()
        for i in combo:
            p = p * gens[i]
        prods.append(p)
    return Ideal(I.ring, prods)


def _aux_ring(ring: Ring) -> Ring:
    t = "t"
    while t in ring.names:
        t = "_" + t
    return Ring((t,) + ring.names, Order("block", 1))


def _eliminate_aux(gens: list, aux: Ring, ring: Ring) -> list:
    """Basis of (gens) ∩ ring, where ``aux`` is ``ring`` with t prepended."""
    gb = buchberger(gens, ring=aux)
    keep = range(1, aux.ngens)
    return [g.drop_variables(ring, keep) for g in gb.elements if all(m[0] == 0 for m in g._c)]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from tI + (1 - t)J."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    aux = _aux_ring(ring)
    pos = range(1, aux.ngens)
    t = aux.var(0)
    gens = [t * f.map_ring(aux, pos) for f in I.generators]
    gens += [(1 - t) * g.map_ring(aux, pos) for g in J.generators]
    return Ideal(ring, _eliminate_aux(gens, aux, ring))


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J = {f : fJ ⊆ I}."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    ring = I.ring
    if I.is_unit():
        return Ideal(ring, [ring.one()])
    result = None
    for g in J.generators:
        if g.is_constant():
            part = I
        else:
            inter = intersect(I, Ideal(ring, [g]))
            part = Ideal(ring, [f.exact_div(g) for f in inter.generators])
        result = part if result is None else intersect(result, part)
    return result


def saturate_colon(I: Ideal, variables: Sequence[int] | None = None, cap: int = 64):
    """Saturation by iterated colons.

    Returns ``(I : m^inf, n_stab)`` where ``n_stab`` is the least ``n`` with
    ``I : m^n = I : m^(n+1)``.
    """
    m = maximal_ideal(I.ring, variables)
    J = I
    for n in range(cap + 1):
        nxt = colon(J, m)
        if all(J.contains(g) for g in nxt.gb.elements):
            return J.reduced(), n
        J = nxt
    raise SaturationCapError(f"saturation did not stabilise within {cap} colon steps")


def saturate_var(I: Ideal, i: int) -> Ideal:
    """I : x_i^inf via (I, 1 - t*x_i) ∩ R."""
    ring = I.ring
    if I.is_zero():
        return I
    aux = _aux_ring(ring)
    pos = range(1, aux.ngens)
    gens = [f.map_ring(aux, pos) for f in I.generators]
    gens.append(1 - aux.var(0) * aux.var(i + 1))
    return Ideal(ring, _eliminate_aux(gens, aux, ring))


def saturate_elim(I: Ideal, variables: Sequence[int] | None = None) -> Ideal:
    """Saturation as the intersection of the per-variable saturations."""
    if variables is None:
        variables = range(I.ring.ngens)
    result = None
    for i in variables:
        part = saturate_var(I, i)
        result = part if result is None else intersect(result, part)
    if result is None:
        return I.reduced()
    return result.reduced()


def hilbert_count(I: Ideal, t: int) -> int:
    """dim_Q (R/I)_t for a homogeneous ideal."""
    if not I.is_homogeneous():
        raise ValueError("hilbert_count needs a homogeneous ideal")
    return I.gb.std_monomials_by_degree(t)
