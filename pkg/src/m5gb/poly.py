"""Sparse multivariate polynomials over F_p.

Terms are packed into a single Python int whose natural integer order *is*
the ring's term order, so comparing terms is ``<`` and multiplying them is
``+``.  Each variable gets a field of ``FIELD_BITS`` bits; the top bit of
every field is a guard bit used for branch-free divisibility tests and for
exponent overflow detection.

grevlex::

    code = deg * 2**(W*n) - sum(e_i * 2**(W*(i-1)))

lex::

    code = sum(e_i * 2**(W*(n-i)))

In both cases the code is additive in the exponent vector.
"""
from __future__ import annotations

import heapq
from collections.abc import Iterable, Mapping, Sequence
from typing import Union

from .field import PrimeField

FIELD_BITS = 17
EXP_LIMIT = 1 << (FIELD_BITS - 1)  # exponents are 16-bit
_FIELD_MASK = (1 << FIELD_BITS) - 1

ORDERS = ("grevlex", "lex")

Term = int


class TermOverflowError(OverflowError):
    pass


class TermOrder:
    """Term order on monomials with x1 > x2 > ... > xn."""

    __slots__ = ("kind",)

    def __init__(self, kind: str = "grevlex"):
        if isinstance(kind, TermOrder):
            kind = kind.kind
        if kind not in ORDERS:
            raise ValueError(f"unknown term order {kind!r}; expected one of {ORDERS}")
        self.kind = kind

    def __repr__(self) -> str:
        return f"TermOrder({self.kind!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TermOrder) and other.kind == self.kind

    def __hash__(self) -> int:
        return hash(self.kind)


class PolyRing:
    """``F_p[x1, ..., xn]`` with a fixed term order."""

    def __init__(self, nvars: int, field: Union[PrimeField, int] = 101, order="grevlex"):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = n = int(nvars)
        self.field = field if isinstance(field, PrimeField) else PrimeField(field)
        self.p = self.field.p
        self.order = TermOrder(order)
        self._grevlex = self.order.kind == "grevlex"
        self._shift = FIELD_BITS * n
        self._full = (1 << self._shift) - 1
        self._guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(n))
        if self._grevlex:
            self._pos = [FIELD_BITS * i for i in range(n)]
        else:
            self._pos = [FIELD_BITS * (n - 1 - i) for i in range(n)]
        self.one: Term = 0
        self.zero = Polynomial(self, (), ())

    def __repr__(self) -> str:
        return f"PolyRing({self.nvars}, p={self.p}, order={self.order.kind!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyRing)
            and other.nvars == self.nvars
            and other.p == self.p
            and other.order == self.order
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.p, self.order.kind))

    # -- terms ---------------------------------------------------------------

    def term(self, exponents: Sequence[int]) -> Term:
        if len(exponents) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exponents)}")
        packed = 0
        for e, pos in zip(exponents, self._pos):
            if e < 0 or e >= EXP_LIMIT:
                raise TermOverflowError(f"exponent {e} outside [0, {EXP_LIMIT})")
            packed |= int(e) << pos
        if self._grevlex:
            return (sum(exponents) << self._shift) - packed
        return packed

    def var(self, i: int) -> Term:
        """The term ``x_i`` (1-based)."""
        exps = [0] * self.nvars
        exps[i - 1] = 1
        return self.term(exps)

    def packed(self, t: Term) -> int:
        """Exponent fields of ``t`` with clear guard bits (divisibility form)."""
        return (-t) & self._full if self._grevlex else t

    def exponents(self, t: Term) -> tuple[int, ...]:
        e = self.packed(t)
        return tuple((e >> pos) & _FIELD_MASK for pos in self._pos)

    def degree(self, t: Term) -> int:
        if self._grevlex:
            return (t + self._full) >> self._shift
        return sum(self.exponents(t))

    def divides(self, a: Term, b: Term) -> bool:
        g = self._guard
        return ((self.packed(b) | g) - self.packed(a)) & g == g

    def quot(self, b: Term, a: Term) -> Term:
        if not self.divides(a, b):
            raise ValueError("term does not divide")
        return b - a

    def mul(self, a: Term, b: Term) -> Term:
        c = a + b
        if self.packed(c) & self._guard:
            raise TermOverflowError("exponent overflow in term product")
        return c

    def lcm(self, a: Term, b: Term) -> Term:
        return self.term([max(x, y) for x, y in zip(self.exponents(a), self.exponents(b))])

    def term_str(self, t: Term) -> str:
        parts = []
        for i, e in enumerate(self.exponents(t), 1):
            if e == 1:
                parts.append(f"x{i}")
            elif e:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomials ---------------------------------------------------------

    def from_dict(self, d: Mapping[Term, int]) -> "Polynomial":
        p = self.p
        items = sorted(((t, c % p) for t, c in d.items() if c % p), reverse=True)
        return Polynomial(self, tuple(t for t, _ in items), tuple(c for _, c in items))

    def from_terms(self, monomials: Iterable[tuple[Sequence[int], int]]) -> "Polynomial":
        """Build from ``(exponents, coefficient)`` pairs; duplicates are summed."""
        d: dict[Term, int] = {}
        for exps, c in monomials:
            t = self.term(exps)
            d[t] = d.get(t, 0) + c
        return self.from_dict(d)

    def monomial(self, t: Term, c: int = 1) -> "Polynomial":
        return self.from_dict({t: c})

    def gens(self) -> list["Polynomial"]:
        return [self.monomial(self.var(i)) for i in range(1, self.nvars + 1)]

    def constant(self, c: int) -> "Polynomial":
        return self.from_dict({0: c})

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.nvars, self.field, order)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Re-encode ``f`` (from a ring with the same variables) into this ring."""
        if f.ring == self:
            return f
        if f.ring.nvars != self.nvars or f.ring.p != self.p:
            raise ValueError("incompatible rings")
        return self.from_dict({self.term(f.ring.exponents(t)): c for t, c in f.items()})


class Polynomial:
    """Immutable polynomial: terms strictly descending, coefficients nonzero."""

    __slots__ = ("ring", "terms", "coeffs", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple, coeffs: tuple):
        self.ring = ring
        self.terms = terms
        self.coeffs = coeffs
        self._hash = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lt(self) -> Term:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    @property
    def lc(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[0]

    def tail(self) -> "Polynomial":
        return Polynomial(self.ring, self.terms[1:], self.coeffs[1:])

    def items(self):
        return zip(self.terms, self.coeffs)

    def to_dict(self) -> dict[Term, int]:
        return dict(zip(self.terms, self.coeffs))

    def coeff(self, t: Term) -> int:
        for u, c in zip(self.terms, self.coeffs):
            if u == t:
                return c
        return 0

    def degree(self) -> int:
        return max((self.ring.degree(t) for t in self.terms), default=-1)

    def monic(self) -> "Polynomial":
        if not self.terms or self.coeffs[0] == 1:
            return self
        p = self.ring.p
        inv = pow(self.coeffs[0], -1, p)
        return Polynomial(self.ring, self.terms, tuple(c * inv % p for c in self.coeffs))

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, self.terms, tuple(x * c % p for x in self.coeffs))

    def mul_term(self, t: Term, c: int = 1) -> "Polynomial":
        ring = self.ring
        for u in self.terms:
            ring.mul(u, t)
        p = ring.p
        c %= p
        if c == 0:
            return ring.zero
        return Polynomial(ring, tuple(u + t for u in self.terms), tuple(x * c % p for x in self.coeffs))

    def _check(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other) -> "Polynomial":
        return add_scaled(self, -1, self._check(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return add_scaled(self, 1, self._check(other))

    def __rsub__(self, other) -> "Polynomial":
        return add_scaled(self._check(other), 1, self)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        acc: dict[Term, int] = {}
        p = self.ring.p
        for t, c in other.items():
            for u, d in self.items():
                k = u + t
                acc[k] = (acc.get(k, 0) + c * d) % p
        out = self.ring.from_dict(acc)
        for t in out.terms:
            if self.ring.packed(t) & self.ring._guard:
                raise TermOverflowError("exponent overflow in product")
        return out

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.terms, self.coeffs))
        return self._hash

    def evaluate(self, point: Sequence[int]) -> int:
        ring = self.ring
        if len(point) != ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {ring.nvars} variables")
        p = ring.p
        total = 0
        for t, c in self.items():
            v = c
            for x, e in zip(point, ring.exponents(t)):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for t, c in self.items():
            if t == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(ring.term_str(t))
            else:
                parts.append(f"{c}*{ring.term_str(t)}")
        return " + ".join(parts)


def cmp_terms(order, a: Sequence[int], b: Sequence[int]) -> int:
    """Compare exponent vectors ``a`` and ``b``: -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError("terms have different numbers of variables")
    ring = _ring_for(len(a), order)
    x, y = ring.term(a), ring.term(b)
    return (x > y) - (x < y)


_RINGS: dict = {}


def _ring_for(n: int, order) -> PolyRing:
    key = (n, TermOrder(order).kind)
    ring = _RINGS.get(key)
    if ring is None:
        ring = _RINGS[key] = PolyRing(n, 101, key[1])
    return ring


def add_scaled(f: Polynomial, c: int, g: Polynomial) -> Polynomial:
    """Return ``f - c*g`` by a linear merge of the two term lists."""
    g = f._check(g)
    ring = f.ring
    p = ring.p
    c %= p
    if c == 0 or not g.terms:
        return f
    ft, fc, gt, gc = f.terms, f.coeffs, g.terms, g.coeffs
    terms: list[int] = []
    coeffs: list[int] = []
    i = j = 0
    nf, ng = len(ft), len(gt)
    while i < nf and j < ng:
        a, b = ft[i], gt[j]
        if a > b:
            terms.append(a)
            coeffs.append(fc[i])
            i += 1
        elif a < b:
            terms.append(b)
            coeffs.append(-c * gc[j] % p)
            j += 1
        else:
            v = (fc[i] - c * gc[j]) % p
            if v:
                terms.append(a)
                coeffs.append(v)
            i += 1
            j += 1
    while i < nf:
        terms.append(ft[i])
        coeffs.append(fc[i])
        i += 1
    while j < ng:
        terms.append(gt[j])
        coeffs.append(-c * gc[j] % p)
        j += 1
    return Polynomial(ring, tuple(terms), tuple(coeffs))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    ell = ring.lcm(f.lt, g.lt)
    uf = f.mul_term(ell - f.lt, pow(f.lc, -1, ring.p))
    vg = g.mul_term(ell - g.lt, pow(g.lc, -1, ring.p))
    return uf - vg


def reduce_ordinary(f: Polynomial, G: Sequence[Polynomial], *, return_quotients: bool = False):
    """Fully reduce ``f`` modulo ``G`` (every term, not only the leading one).

    Among several divisors of a term the one with the smallest leading term
    is used, ties broken by position in ``G``.  With ``return_quotients`` the
    multipliers ``q`` with ``f = sum(q_i * G_i) + r`` are returned as well.
    """
    ring = f.ring
    p = ring.p
    for g in G:
        f._check(g)
        if not g:
            raise ValueError("cannot reduce by the zero polynomial")
    # ascending LT, stable in the original index
    divisors = sorted(range(len(G)), key=lambda k: G[k].terms[0])
    guard = ring._guard
    packed = ring.packed
    lts = [(packed(G[k].terms[0]), G[k].terms[0], k, pow(G[k].coeffs[0], -1, p)) for k in divisors]
    work = f.to_dict()
    heap = [-t for t in work]
    heapq.heapify(heap)
    queued = set(work)
    rest: dict[Term, int] = {}
    quotients = [dict() for _ in G] if return_quotients else None
    while heap:
        t = -heapq.heappop(heap)
        queued.discard(t)
        c = work.pop(t, 0)
        if not c:
            continue
        et = packed(t) | guard
        for e, lt, k, lcinv in lts:
            if (et - e) & guard == guard:
                break
        else:
            rest[t] = c
            continue
        u = t - lt
        q = c * lcinv % p
        g = G[k]
        for gt, gc in zip(g.terms[1:], g.coeffs[1:]):
            key = gt + u
            v = (work.get(key, 0) - q * gc) % p
            if v:
                work[key] = v
                if key not in queued:
                    queued.add(key)
                    heapq.heappush(heap, -key)
            else:
                work.pop(key, None)
        if quotients is not None:
            quotients[k][u] = (quotients[k].get(u, 0) + q) % p
    r = ring.from_dict(rest)
    if return_quotients:
        return r, [ring.from_dict(q) for q in quotients]
    return r


def interreduce(G: Sequence[Polynomial]) -> list[Polynomial]:
    """Monic, mutually reduced version of ``G`` sorted by ascending leading term.

    For a Groebner basis this is the reduced Groebner basis of its ideal.
    """
    basis = [g.monic() for g in G if g]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda g: g.terms[0])
        # drop elements whose leading term is divisible by an earlier one
        kept: list[Polynomial] = []
        for g in basis:
            if any(g.ring.divides(h.terms[0], g.terms[0]) for h in kept):
                changed = True
                r = reduce_ordinary(g, kept)
                if r:
                    kept.append(r.monic())
                continue
            kept.append(g)
        if changed:
            basis = kept
            continue
        # leading terms are now pairwise non-dividing, so tail reduction keeps them
        basis = [
            reduce_ordinary(g, kept[:i] + kept[i + 1:]).monic() for i, g in enumerate(kept)
        ]
    basis.sort(key=lambda g: g.terms[0])
    return basis
