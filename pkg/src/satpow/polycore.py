"""Exact sparse polynomials over Q, monomial orders and free-module vectors.

Coefficients are :class:`fractions.Fraction` throughout; monomials are plain
tuples of non-negative exponents.  Values are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple


class RingMismatchError(ValueError):
    pass


def grevlex_key(e):
    return (sum(e),) + tuple(-a for a in reversed(e))


@dataclass(frozen=True)
class Order:
    """A global monomial order.

    ``kind`` is ``'lex'``, ``'grevlex'`` or ``'block'``.  A block order
    compares the first ``split`` exponents by grevlex and breaks ties with
    grevlex on the rest, so it eliminates the first block.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    def key(self, e):
        """Sort key: u < v in this order iff key(u) < key(v)."""
        if self.kind == "grevlex":
            return grevlex_key(e)
        if self.kind == "lex":
            return tuple(e)
        s = self.split
        return (grevlex_key(e[:s]), grevlex_key(e[s:]))


GREVLEX = Order("grevlex")
LEX = Order("lex")


def compare_monomials(u, v, order: Order = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``u`` is less than, equal to or greater than ``v``."""
    if len(u) != len(v):
        raise ValueError("monomials of different lengths")
    ku, kv = order.key(u), order.key(v)
    return (ku > kv) - (ku < kv)


@dataclass(frozen=True)
class Ring:
    """Q[names] with a fixed monomial order."""

    names: tuple
    order: Order = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def gens(self) -> list:
        return [self.var(i) for i in range(self.ngens)]

    def var(self, which) -> "Poly":
        i = self.names.index(which) if isinstance(which, str) else which
        e = [0] * self.ngens
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.ngens: Fraction(c)})

    def monomial(self, exps, coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): Fraction(coeff)})

    def with_order(self, order: Order) -> "Ring":
        return Ring(self.names, order)

    def __call__(self, text: str) -> "Poly":
        # convenience for tests and demos; the job parser lives in cli
        from satpow.cli import parse_polynomial

        return parse_polynomial(text, self)

    def __str__(self):
        return "Q[" + ",".join(self.names) + "]"


class Poly:
    """Sparse polynomial: a mapping from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_c", "_hash")

    def __init__(self, ring: Ring, coeffs: Mapping | None = None):
        self.ring = ring
        n = ring.ngens
        c = {}
        for m, a in (coeffs or {}).items():
            if a:
                if len(m) != n:
                    raise ValueError(f"monomial {m} has wrong length for {ring}")
                c[tuple(m)] = a if isinstance(a, Fraction) else Fraction(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, ring, coeffs):
        p = cls.__new__(cls)
        p.ring = ring
        p._c = coeffs
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def terms(self) -> list:
        """(monomial, coefficient) pairs in descending order."""
        key = self.ring.order.key
        return sorted(self._c.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    @property
    def lead_monomial(self):
        if not self._c:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._c, key=self.ring.order.key)

    @property
    def lead_coeff(self) -> Fraction:
        return self._c[self.lead_monomial]

    def total_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(sum(m) for m in self._c)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._c}) <= 1

    def degree_in(self, indices: Sequence[int]) -> int:
        """Largest total degree in the given subset of variables."""
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(sum(m[i] for i in indices) for m in self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._c)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            return self.ring.const(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        c = dict(self._c)
        for m, a in other._c.items():
            v = c.get(m, 0) + a
            if v:
                c[m] = v
            else:
                c.pop(m, None)
        return Poly._raw(self.ring, c)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: -a for m, a in self._c.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Fraction(other)
            if not other:
                return Poly._raw(self.ring, {})
            return Poly._raw(self.ring, {m: a * other for m, a in self._c.items()})
        other = self._check(other)
        c = {}
        for m1, a1 in self._c.items():
            for m2, a2 in other._c.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = c.get(m, 0) + a1 * a2
                if v:
                    c[m] = v
                else:
                    c.pop(m, None)
        return Poly._raw(self.ring, c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = self.ring.one()
        for _ in range(k):
            r = r * self
        return r

    def mul_monomial(self, exps, coeff=1) -> "Poly":
        coeff = Fraction(coeff)
        return Poly._raw(
            self.ring,
            {tuple(x + y for x, y in zip(m, exps)): a * coeff for m, a in self._c.items()},
        )

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm, lc = divisor.lead_monomial, divisor.lead_coeff
        q = {}
        r = self
        while r:
            m = r.lead_monomial
            diff = tuple(a - b for a, b in zip(m, lm))
            if min(diff) < 0:
                raise ArithmeticError("division is not exact")
            c = r._c[m] / lc
            q[diff] = c
            r = r - divisor.mul_monomial(diff, c)
        return Poly._raw(self.ring, q)

    def monic(self) -> "Poly":
        if not self._c:
            return self
        return self * (1 / self.lead_coeff)

    def map_ring(self, ring: Ring, positions: Sequence[int]) -> "Poly":
        """Re-embed into ``ring``; variable i goes to ``positions[i]``."""
        n = ring.ngens
        c = {}
        for m, a in self._c.items():
            e = [0] * n
            for i, p in enumerate(positions):
                e[p] += m[i]
            c[tuple(e)] = a
        return Poly._raw(ring, c)

    def drop_variables(self, ring: Ring, keep: Sequence[int]) -> "Poly":
        """Project onto ``ring`` keeping the listed exponent slots.

        The dropped variables must not occur.
        """
        keep = list(keep)
        drop = [i for i in range(self.ring.ngens) if i not in keep]
        c = {}
        for m, a in self._c.items():
            if any(m[i] for i in drop):
                raise ValueError("polynomial involves a dropped variable")
            c[tuple(m[i] for i in keep)] = a
        return Poly._raw(ring, c)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({(0,) * self.ring.ngens: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._c.items())))
        return self._hash

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for m, a in self.terms():
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.ring.names, m) if e
            )
            sign = "-" if a < 0 else "+"
            a = abs(a)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}" if a.denominator == 1 else f"({a})*{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def total_degree(p: Poly) -> int:
    return p.total_degree()


def homogeneous_check(p: Poly) -> bool:
    return p.is_homogeneous()


class VecPoly:
    """An element of the free module R^r, stored as a tuple of components."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: Ring, comps: Iterable):
        comps = tuple(c if isinstance(c, Poly) else ring.const(c) for c in comps)
        for c in comps:
            if c.ring != ring:
                raise RingMismatchError(f"{c.ring} vs {ring}")
        if not comps:
            raise ValueError("free module of rank 0")
        self.ring = ring
        self.comps = comps

    @property
    def rank(self) -> int:
        return len(self.comps)

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _check(self, other):
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("vectors live in different free modules")

    def __add__(self, other):
        self._check(other)
        return VecPoly(self.ring, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._check(other)
        return VecPoly(self.ring, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VecPoly(self.ring, [-a for a in self.comps])

    def __mul__(self, scalar):
        return VecPoly(self.ring, [a * scalar for a in self.comps])

    __rmul__ = __mul__

    def is_homogeneous(self) -> bool:
        """All terms of all components share one degree (component shifts 0)."""
        return len({sum(m) for c in self.comps for m in c._c}) <= 1

    def total_degree(self) -> int:
        return max(c.total_degree() for c in self.comps if c)

    def __eq__(self, other):
        if not isinstance(other, VecPoly):
            return NotImplemented
        return self.ring == other.ring and self.comps == other.comps

    def __hash__(self):
        return hash((self.ring, self.comps))

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.comps) + "]"

    __repr__ = __str__
