"""Buchberger's algorithm for ideals and for submodules of free modules.

Internally a term is a tuple ``(component, e_1, ..., e_n)``; ideals use
component 0 only.  Basis elements are kept as primitive integer polynomials
with positive leading coefficient, which is a canonical representative of
the monic polynomial over Q.  Pairs are pruned with the Gebauer-Moeller
criteria and selected by the normal strategy (smallest lcm degree first).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from operator import add
from typing import Sequence

from satpow.polycore import Order, Poly, Ring, VecPoly, RingMismatchError

POT = "pot"
TOP = "top"


class _KeyCache(dict):
    """Memoised sort key for internal terms."""

    def __init__(self, order: Order, module_order: str = POT):
        super().__init__()
        self.order = order
        self.module_order = module_order

    def __missing__(self, m):
        base = self.order.key(m[1:])
        k = (-m[0], base) if self.module_order == POT else (base, -m[0])
        self[m] = k
        return k


def _divides(a, b):
    return a[0] == b[0] and all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return (a[0],) + tuple(x if x > y else y for x, y in zip(a[1:], b[1:]))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a[1:], b[1:]))


def _content(values):
    return math.gcd(*values)


def _primitive(p: dict, key) -> tuple:
    """Return ``(lm, lc, p)`` with integer content 1 and positive leading coefficient."""
    lm = max(p, key=key.__getitem__)
    c = _content(p.values())
    if p[lm] < 0:
        c = -c
    if c != 1:
        p = {m: a // c for m, a in p.items()}
    return lm, p[lm], p


def _reduce(p: dict, G, key):
    """Full reduction of ``p`` by the triples in ``G``.

    Returns ``(r, s)`` with ``s * p - r`` in the submodule and ``s`` a
    nonzero Fraction.
    """
    p = dict(p)
    r = {}
    s = Fraction(1)
    getk = key.__getitem__
    while p:
        m = max(p, key=getk)
        c = p[m]
        for g in G:
            lm = g[0]
            if lm[0] == m[0] and all(x >= y for x, y in zip(m, lm)):
                break
        else:
            r[m] = p.pop(m)
            continue
        lm, lc, gp = g
        q = tuple(x - y for x, y in zip(m, lm))
        h = math.gcd(c, lc)
        a, b = lc // h, c // h
        if a != 1:
            for t in p:
                p[t] *= a
            for t in r:
                r[t] *= a
            s *= a
        for t, cc in gp.items():
            nt = tuple(map(add, t, q))
            v = p.get(nt, 0) - b * cc
            if v:
                p[nt] = v
            else:
                p.pop(nt, None)
        if a != 1 and p:
            cont = math.gcd(_content(p.values()), _content(r.values()) if r else 0)
            if cont > 1:
                for t in p:
                    p[t] //= cont
                for t in r:
                    r[t] //= cont
                s /= cont
    return r, s


def _spoly(f, g):
    lmf, lcf, pf = f
    lmg, lcg, pg = g
    L = _lcm(lmf, lmg)
    uf = (0,) + tuple(x - y for x, y in zip(L[1:], lmf[1:]))
    ug = (0,) + tuple(x - y for x, y in zip(L[1:], lmg[1:]))
    h = math.gcd(lcf, lcg)
    a, b = lcg // h, lcf // h
    out = {}
    for t, c in pf.items():
        out[tuple(map(add, t, uf))] = a * c
    for t, c in pg.items():
        nt = tuple(map(add, t, ug))
        v = out.get(nt, 0) - b * c
        if v:
            out[nt] = v
        else:
            out.pop(nt, None)
    return out


def _buchberger(F: list, key, product_criterion: bool) -> list:
    polys = []
    active = []
    pairs = {}  # (i, j) -> selection key

    def pair_key(i, j):
        L = _lcm(polys[i][0], polys[j][0])
        return (sum(L[1:]), key[L], i, j)

    def update(h):
        lmh = polys[h][0]
        cand = [g for g in active if polys[g][0][0] == lmh[0]]
        lcms = {g: _lcm(lmh, polys[g][0]) for g in cand}
        C = list(cand)
        D = []
        while C:
            g1 = C.pop()
            L1 = lcms[g1]
            if (product_criterion and _coprime(lmh, polys[g1][0])) or not any(
                _divides(lcms[g2], L1) for g2 in C + D
            ):
                D.append(g1)
        E = [g for g in D if not (product_criterion and _coprime(lmh, polys[g][0]))]
        for (i, j) in list(pairs):
            Lij = _lcm(polys[i][0], polys[j][0])
            if (
                _divides(lmh, Lij)
                and _lcm(polys[i][0], lmh) != Lij
                and _lcm(lmh, polys[j][0]) != Lij
            ):
                del pairs[(i, j)]
        for g in E:
            pairs[(g, h)] = pair_key(g, h)
        active[:] = [g for g in active if not _divides(lmh, polys[g][0])]
        active.append(h)

    for f in F:
        if f:
            polys.append(_primitive(f, key))
            update(len(polys) - 1)

    while pairs:
        ij = min(pairs, key=pairs.__getitem__)
        del pairs[ij]
        i, j = ij
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r, _ = _reduce(s, [polys[g] for g in active], key)
        if r:
            polys.append(_primitive(r, key))
            update(len(polys) - 1)

    G = [polys[g] for g in active]
    # minimalise then interreduce
    G.sort(key=lambda g: key[g[0]])
    minimal = []
    for g in G:
        if not any(_divides(h[0], g[0]) for h in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        lm, lc, gp = g
        tail = {t: c for t, c in gp.items() if t != lm}
        r, s = _reduce(tail, others, key)
        # g = lc*lm + tail ; s*tail ≡ r  =>  s*g ≡ s*lc*lm + r
        new = {lm: s * lc}
        for t, c in r.items():
            new[t] = Fraction(c)
        den = math.lcm(*(v.denominator for v in new.values()))
        new = {t: int(v * den) for t, v in new.items()}
        reduced.append(_primitive(new, key))
    reduced.sort(key=lambda g: key[g[0]], reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# conversion between public values and internal terms


def _to_internal(f, rank):
    """Integer-coefficient internal dict for a Poly (rank None) or VecPoly."""
    if rank is None:
        if not isinstance(f, Poly):
            raise RingMismatchError("expected a polynomial for an ideal basis")
        items = [((0,) + m, a) for m, a in f.items()]
    else:
        if not isinstance(f, VecPoly) or f.rank != rank:
            raise RingMismatchError(f"expected a vector of rank {rank}")
        items = [((i,) + m, a) for i, c in enumerate(f.comps) for m, a in c.items()]
    if not items:
        return {}, Fraction(1)
    den = math.lcm(*(a.denominator for _, a in items))
    return {t: int(a * den) for t, a in items}, Fraction(den)


def _from_internal(p: dict, ring: Ring, rank, scale=Fraction(1)):
    if rank is None:
        return Poly._raw(ring, {t[1:]: Fraction(c) / scale for t, c in p.items()})
    comps = [{} for _ in range(rank)]
    for t, c in p.items():
        comps[t[0]][t[1:]] = Fraction(c) / scale
    return VecPoly(ring, [Poly._raw(ring, c) for c in comps])


class GroebnerBasis:
    """A reduced Groebner basis of an ideal (``rank is None``) or of a
    submodule of ``ring**rank``."""

    def __init__(self, ring: Ring, rank, module_order: str, triples: list):
        self.ring = ring
        self.rank = rank
        self.module_order = module_order
        self._key = _KeyCache(ring.order, module_order)
        self._G = triples
        self._elements = None

    @property
    def order(self) -> Order:
        return self.ring.order

    @property
    def reduced(self) -> bool:
        return True

    def __len__(self):
        return len(self._G)

    def __iter__(self):
        return iter(self.elements)

    @property
    def elements(self) -> list:
        """Monic basis elements, descending by leading term."""
        if self._elements is None:
            self._elements = [
                _from_internal(p, self.ring, self.rank, Fraction(lc)) for _, lc, p in self._G
            ]
        return list(self._elements)

    def leading_terms(self) -> list:
        """Leading terms as ``(component, exponents)`` pairs."""
        return [(g[0][0], g[0][1:]) for g in self._G]

    def _check_ambient(self, f):
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")

    def normal_form(self, f):
        self._check_ambient(f)
        p, den = _to_internal(f, self.rank)
        if not p:
            return f
        r, s = _reduce(p, self._G, self._key)
        return _from_internal(r, self.ring, self.rank, s * den)

    def contains(self, f) -> bool:
        self._check_ambient(f)
        p, _ = _to_internal(f, self.rank)
        if not p:
            return True
        r, _ = _reduce(p, self._G, self._key)
        return not r

    def __contains__(self, f):
        return self.contains(f)

    def contains_all(self, fs) -> bool:
        return all(self.contains(f) for f in fs)

    def is_unit(self) -> bool:
        """True for the whole ring / whole free module."""
        lms = {g[0] for g in self._G}
        n = self.ring.ngens
        comps = range(self.rank or 1)
        return all((i,) + (0,) * n in lms for i in comps)

    def max_degree(self) -> int:
        return max((sum(t[1:]) for g in self._G for t in g[2]), default=0)

    def s_pairs_reduce_to_zero(self) -> bool:
        """Direct check of Buchberger's criterion on this basis."""
        G = self._G
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                if G[i][0][0] != G[j][0][0]:
                    continue
                s = _spoly(G[i], G[j])
                if s and _reduce(s, G, self._key)[0]:
                    return False
        return True

    def std_monomials_by_degree(self, t: int) -> int:
        """Number of degree-``t`` terms outside the leading-term module."""
        if t < 0:
            raise ValueError("negative degree")
        n = self.ring.ngens
        by_comp = {}
        for g in self._G:
            by_comp.setdefault(g[0][0], []).append(g[0][1:])
        count = 0
        for i in range(self.rank or 1):
            lms = by_comp.get(i, [])
            for m in monomials_of_degree(n, t):
                if not any(all(a >= b for a, b in zip(m, l)) for l in lms):
                    count += 1
        return count

    def _signature(self):
        return (self.ring, self.rank, self.module_order, [tuple(sorted(g[2].items())) for g in self._G])

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash(tuple(self._signature()[3]))

    def __repr__(self):
        return f"GroebnerBasis({', '.join(str(e) for e in self.elements)})"


def monomials_of_degree(n: int, t: int):
    """All exponent tuples of length ``n`` and total degree ``t``."""
    if n == 0:
        if t == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(n), t):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def buchberger(
    gens: Sequence,
    ring: Ring | None = None,
    rank=None,
    module_order: str = POT,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal or module generated by ``gens``.

    The monomial order is the ring's.  For an empty generating set pass
    ``ring`` (and ``rank`` for a module) explicitly.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("empty generating set needs an explicit ring")
        ring = gens[0].ring
    if gens and rank is None and isinstance(gens[0], VecPoly):
        rank = gens[0].rank
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
    key = _KeyCache(ring.order, module_order)
    F = [p for p, _ in (_to_internal(g, rank) for g in gens) if p]
    G = _buchberger(F, key, product_criterion=(rank is None or rank == 1))
    return GroebnerBasis(ring, rank, module_order, G)


def normal_form(f, gb: GroebnerBasis):
    return gb.normal_form(f)


def contains(f, gb: GroebnerBasis) -> bool:
    return gb.contains(f)


def std_monomials_by_degree(gb: GroebnerBasis, t: int) -> int:
    return gb.std_monomials_by_degree(t)
