"""Submodules E of F = R^gamma, their powers E^k in Sym^k(F), saturations
and the lengths of the finite quotients.

E^k is realised inside S = R[y_1..y_gamma] as the y-degree-k part of the
ideal (ES)^k; F^k is identified with the free R-module on the degree-k
y-monomials, ordered by grevlex (descending).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from satpow.groebner import TOP, GroebnerBasis, buchberger, monomials_of_degree
from satpow.ideal_ops import (
    AlgebraError,
    Ideal,
    SaturationCapError,
    _aux_ring,
    colon,
    maximal_ideal,
)
from satpow.polycore import Poly, Ring, VecPoly, grevlex_key


class InfiniteLengthError(AlgebraError):
    """The quotient is not m-power torsion (its length is infinite)."""


def symmetric_ring(ring: Ring, gamma: int) -> Ring:
    """S = R[y_1..y_gamma]; the y names avoid clashes with ring variables."""
    prefix = "y"
    while any(f"{prefix}{j + 1}" in ring.names for j in range(gamma)):
        prefix = "_" + prefix
    return Ring(ring.names + tuple(f"{prefix}{j + 1}" for j in range(gamma)), ring.order)


def y_basis(gamma: int, k: int) -> tuple:
    """Degree-k monomials in gamma variables, grevlex descending."""
    return tuple(sorted(monomials_of_degree(gamma, k), key=grevlex_key, reverse=True))


def generic_rank(rows: Sequence[Sequence[Poly]]) -> int:
    """Rank over the fraction field, by fraction-free Gaussian elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, len(M)):
            q = M[i][col]
            if q:
                M[i] = [p * a - q * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@dataclass
class SubmoduleSpec:
    """E ⊆ R^gamma given by generator vectors."""

    ring: Ring
    gamma: int
    generators: list
    _rank: int | None = field(default=None, repr=False)

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.rank != self.gamma or g.ring != self.ring:
                raise ValueError("generator outside R^gamma")

    @classmethod
    def from_ideal(cls, I: Ideal) -> "SubmoduleSpec":
        return cls(I.ring, 1, [VecPoly(I.ring, [g]) for g in I.generators])

    @property
    def dim_d(self) -> int:
        return self.ring.ngens

    @property
    def rank_e(self) -> int:
        if self._rank is None:
            self._rank = generic_rank([g.comps for g in self.generators])
        return self._rank

    @property
    def sym_ring(self) -> Ring:
        return symmetric_ring(self.ring, self.gamma)

    @property
    def linear_forms(self) -> list:
        S = self.sym_ring
        d = self.ring.ngens
        pos = range(d)
        out = []
        for g in self.generators:
            w = S.zero()
            for j, c in enumerate(g.comps):
                w = w + c.map_ring(S, pos) * S.var(d + j)
            out.append(w)
        return out

    def is_ideal(self) -> bool:
        return self.gamma == 1

    def is_monomial(self) -> bool:
        return self.gamma == 1 and all(g[0].is_monomial() for g in self.generators)

    def as_ideal(self) -> Ideal:
        if self.gamma != 1:
            raise ValueError("not an ideal")
        return Ideal(self.ring, [g[0] for g in self.generators])


@dataclass
class GradedPiece:
    """A submodule of F^k = Sym^k(R^gamma), in coordinates over ``y_basis``."""

    ring: Ring
    gamma: int
    k: int
    generators: list
    _gb: GroebnerBasis | None = field(default=None, repr=False)

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        r = self.ambient_rank
        for g in self.generators:
            if g.rank != r:
                raise ValueError("generator has the wrong number of coordinates")

    @property
    def basis(self) -> tuple:
        return y_basis(self.gamma, self.k)

    @property
    def ambient_rank(self) -> int:
        return len(self.basis)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.generators, ring=self.ring, rank=self.ambient_rank)
        return self._gb

    def contains(self, v: VecPoly) -> bool:
        return self.gb.contains(v)

    def issubset(self, other: "GradedPiece") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def to_sym(self, S: Ring | None = None) -> list:
        """Generators as y-degree-k polynomials of S."""
        S = S or symmetric_ring(self.ring, self.gamma)
        d = self.ring.ngens
        out = []
        for g in self.generators:
            c = {}
            for beta, comp in zip(self.basis, g.comps):
                for m, a in comp.items():
                    c[m + beta] = a
            out.append(Poly(S, c))
        return out

    @classmethod
    def from_sym(cls, ring: Ring, gamma: int, k: int, polys) -> "GradedPiece":
        d = ring.ngens
        index = {b: i for i, b in enumerate(y_basis(gamma, k))}
        gens = []
        for p in polys:
            comps = [dict() for _ in index]
            for m, a in p.items():
                beta = m[d:]
                if beta not in index:
                    raise ValueError(f"term of y-degree {sum(beta)} in a degree-{k} piece")
                comps[index[beta]][m[:d]] = a
            gens.append(VecPoly(ring, [Poly(ring, c) for c in comps]))
        return cls(ring, gamma, k, gens)

    def __eq__(self, other):
        if not isinstance(other, GradedPiece):
            return NotImplemented
        return (self.ring, self.gamma, self.k) == (other.ring, other.gamma, other.k) and self.gb == other.gb

    def __repr__(self):
        return f"GradedPiece(k={self.k}, gens=[{', '.join(map(str, self.generators))}])"


def module_power(E: SubmoduleSpec, k: int) -> GradedPiece:
    """E^k as the degree-k part of (ES)^k."""
    if k < 1:
        raise ValueError("module_power needs k >= 1")
    S = E.sym_ring
    forms = E.linear_forms
    prods = []
    seen = set()
    for combo in combinations_with_replacement(range(len(forms)), k):
        p = S.one()
        for i in combo:
            p = p * forms[i]
        if p and p not in seen:
            seen.add(p)
            prods.append(p)
    return GradedPiece.from_sym(E.ring, E.gamma, k, prods)


def graded_product(A: GradedPiece, B: GradedPiece) -> GradedPiece:
    """The piece generated by all products of generators of A and B."""
    S = symmetric_ring(A.ring, A.gamma)
    prods = [f * g for f in A.to_sym(S) for g in B.to_sym(S)]
    return GradedPiece.from_sym(A.ring, A.gamma, A.k + B.k, prods)


def _y_degree(p: Poly, d: int) -> int:
    return p.degree_in(range(d, p.ring.ngens))


def module_saturate(Ek: GradedPiece, cap: int | None = None):
    """E^k :_{F^k} m^inf computed inside S.

    Iterates J <- J : mS on the ideal (ES)^k and stops once the y-degree-k
    part no longer grows.  Returns ``(piece, n_stab)``.
    """
    k = Ek.k
    cap = 64 * k if cap is None else cap
    S = symmetric_ring(Ek.ring, Ek.gamma)
    d = Ek.ring.ngens
    m = maximal_ideal(S, range(d))
    J = Ideal(S, Ek.to_sym(S))
    for n in range(cap + 1):
        nxt = colon(J, m)
        new_k = [g for g in nxt.gb.elements if _y_degree(g, d) == k]
        if all(J.contains(g) for g in new_k):
            elems = J.gb.elements
            if any(_y_degree(g, d) < k for g in elems):
                raise AlgebraError("saturation produced an element of y-degree below k")
            part = [g for g in elems if _y_degree(g, d) == k]
            return GradedPiece.from_sym(Ek.ring, Ek.gamma, k, part), n
        J = nxt
    raise SaturationCapError(f"module saturation did not stabilise within {cap} steps (k={k})")


# -- the independent path: colons inside the free module F^k ---------------


def _module_intersect(A: list, B: list, ring: Ring, rank: int) -> list:
    """A ∩ B for submodules of ring^rank, eliminating t from tA + (1-t)B."""
    if not A or not B:
        return []
    aux = _aux_ring(ring)
    pos = range(1, aux.ngens)
    t = aux.var(0)

    def lift(v, factor):
        return VecPoly(aux, [factor * c.map_ring(aux, pos) for c in v.comps])

    gens = [lift(a, t) for a in A] + [lift(b, 1 - t) for b in B]
    gb = buchberger(gens, ring=aux, rank=rank, module_order=TOP)
    keep = range(1, aux.ngens)
    out = []
    for v in gb.elements:
        if all(m[0] == 0 for c in v.comps for m in c._c):
            out.append(VecPoly(ring, [c.drop_variables(ring, keep) for c in v.comps]))
    return out


def module_colon_var(gens: list, ring: Ring, rank: int, i: int) -> list:
    """N :_F x_i for N ⊆ F = ring^rank."""
    x = ring.var(i)
    unit_vecs = [
        VecPoly(ring, [x if j == c else ring.zero() for j in range(rank)]) for c in range(rank)
    ]
    inter = _module_intersect(gens, unit_vecs, ring, rank)
    return [VecPoly(ring, [c.exact_div(x) for c in v.comps]) for v in inter]


def module_colon_m(gens: list, ring: Ring, rank: int, variables=None) -> list:
    if variables is None:
        variables = range(ring.ngens)
    result = None
    for i in variables:
        part = module_colon_var(gens, ring, rank, i)
        result = part if result is None else _module_intersect(result, part, ring, rank)
    return result


def torsion_h0(Ek: GradedPiece, cap: int | None = None):
    """The m-power torsion of F^k/E^k, lifted to a submodule N of F^k.

    Returns ``(N, n_stab)``.
    """
    k = Ek.k
    cap = 64 * k if cap is None else cap
    ring, r = Ek.ring, Ek.ambient_rank
    N = Ek
    for n in range(cap + 1):
        nxt = module_colon_m(N.generators, ring, r)
        if all(N.contains(v) for v in nxt):
            return GradedPiece(ring, Ek.gamma, k, N.gb.elements), n
        N = GradedPiece(ring, Ek.gamma, k, nxt)
    raise SaturationCapError(f"torsion computation did not stabilise within {cap} steps (k={k})")


# -- lengths ---------------------------------------------------------------


def _max_degree(piece: GradedPiece) -> int:
    return max((g.total_degree() for g in piece.generators), default=0)


def annihilator_exponent(N: GradedPiece, Ek: GradedPiece, cap: int = 256) -> int:
    """Least D with m^D N ⊆ E^k; InfiniteLengthError past ``cap``."""
    ring = N.ring
    d = ring.ngens
    for D in range(cap + 1):
        monos = [ring.monomial(a) for a in monomials_of_degree(d, D)]
        if all(Ek.contains(v * u) for v in N.generators for u in monos):
            return D
    raise InfiniteLengthError(f"m^{cap} does not annihilate N/E^k")


def _truncated_colength(piece: GradedPiece, T: int) -> int:
    """dim_Q F/(piece + m^T F)."""
    ring, r = piece.ring, piece.ambient_rank
    monos = [ring.monomial(a) for a in monomials_of_degree(ring.ngens, T)]
    extra = [
        VecPoly(ring, [u if j == c else ring.zero() for j in range(r)])
        for c in range(r)
        for u in monos
    ]
    gb = buchberger(piece.generators + extra, ring=ring, rank=r)
    return sum(gb.std_monomials_by_degree(t) for t in range(T))


def quotient_length(
    N: GradedPiece,
    Ek: GradedPiece,
    n_stab: int | None = None,
    cap: int = 256,
    path: str = "auto",
) -> int:
    """Length of N/E^k over the local ring at the origin.

    Homogeneous data use Hilbert function differences; anything else (or
    ``path="truncated"``) compares colengths after adding m^T F^k, raising T
    until two consecutive values agree.
    """
    if path not in ("auto", "graded", "truncated"):
        raise ValueError(f"unknown path {path!r}")
    if not all(N.contains(v) for v in Ek.generators):
        raise ValueError("E^k is not contained in N")
    if all(Ek.contains(v) for v in N.generators):
        return 0
    if n_stab is None:
        n_stab = annihilator_exponent(N, Ek, cap)
    graded = N.is_homogeneous() and Ek.is_homogeneous()
    if path == "graded" and not graded:
        raise ValueError("graded path needs homogeneous generators")
    if graded and path != "truncated":
        T = _max_degree(N) + n_stab
        gE, gN = Ek.gb, N.gb
        total = 0
        for t in range(T):
            total += gE.std_monomials_by_degree(t) - gN.std_monomials_by_degree(t)
        for t in (T, T + 1):
            if gE.std_monomials_by_degree(t) != gN.std_monomials_by_degree(t):
                raise InfiniteLengthError(f"Hilbert functions still differ in degree {t}")
        return total
    T = n_stab + max(_max_degree(N), _max_degree(Ek))
    prev = None
    for T in range(T, T + cap):
        cur = _truncated_colength(Ek, T) - _truncated_colength(N, T)
        if cur == prev:
            return cur
        prev = cur
    raise InfiniteLengthError("truncated lengths did not stabilise")
