"""Module terms, signatures and S-pairs.

A signature ``t*e_i`` is stored as :class:`Signature` ``(index, term)`` with
a 1-based generator index and a packed term from :mod:`m5gb.poly`.  A
:class:`SigOrder` maps signatures to plain tuples whose lexicographic order
is the module order, which is what the solvers compare internally.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .poly import PolyRing, Polynomial, Term

SIG_ORDERS = ("pot", "top")


class Signature(NamedTuple):
    index: int
    term: Term

    def __repr__(self) -> str:
        return f"Signature({self.index}, {self.term})"


class _Infinity:
    """Formal signature larger than every module term."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
INF_KEY = (math.inf,)

AnySig = Union[Signature, _Infinity]


class SigOrder:
    """Compatible extension of a ring's term order to module terms.

    ``pot`` compares the generator index first, ``top`` the term first.
    """

    __slots__ = ("kind", "ring", "_pot")

    def __init__(self, ring: PolyRing, kind: str = "pot"):
        kind = kind.lower()
        if kind not in SIG_ORDERS:
            raise ValueError(f"unknown signature order {kind!r}; expected one of {SIG_ORDERS}")
        self.kind = kind
        self.ring = ring
        self._pot = kind == "pot"

    def __repr__(self) -> str:
        return f"SigOrder({self.kind!r}, {self.ring.order.kind!r})"

    # key <-> signature

    def key(self, s: AnySig) -> tuple:
        if s is INF:
            return INF_KEY
        return (s.index, s.term) if self._pot else (s.term, s.index)

    def make_key(self, index: int, term: Term) -> tuple:
        return (index, term) if self._pot else (term, index)

    def from_key(self, k: tuple) -> AnySig:
        if k == INF_KEY:
            return INF
        return Signature(k[0], k[1]) if self._pot else Signature(k[1], k[0])

    def key_index(self, k: tuple) -> int:
        return k[0] if self._pot else k[1]

    def key_term(self, k: tuple) -> Term:
        return k[1] if self._pot else k[0]

    def key_mul(self, u: Term, k: tuple) -> tuple:
        return (k[0], k[1] + u) if self._pot else (k[0] + u, k[1])


def cmp_sig(order: SigOrder, a: AnySig, b: AnySig) -> int:
    """Three-way comparison of two signatures (``INF`` is maximal)."""
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def sig_mul(ring: PolyRing, t: Term, s: Signature) -> Signature:
    if s is INF:
        raise ValueError("cannot multiply INF")
    return Signature(s.index, ring.mul(s.term, t))


def sig_divides(ring: PolyRing, a: Signature, b: Signature) -> bool:
    if a is INF or b is INF:
        raise ValueError("divisibility is only defined for finite signatures")
    return a.index == b.index and ring.divides(a.term, b.term)


def sig_quot(ring: PolyRing, b: Signature, a: Signature) -> Term:
    """The term ``u`` with ``u * a == b``."""
    if not sig_divides(ring, a, b):
        raise ValueError(f"{a} does not divide {b}")
    return b.term - a.term


@dataclass(frozen=True)
class SigPoly:
    """A module element represented by its signature and its image polynomial."""

    sig: Signature
    poly: Polynomial


@dataclass(frozen=True)
class Input:
    index: int


@dataclass(frozen=True)
class Pair:
    idx_f: int
    idx_g: int
    u: Term
    v: Term


@dataclass(frozen=True)
class SPairRecord:
    sig: Signature
    origin: Union[Input, Pair]


def make_spair(order: SigOrder, f: SigPoly, idx_f: int, g: SigPoly, idx_g: int) -> Optional[SPairRecord]:
    """S-pair of ``f`` and ``g``, or ``None`` when it is singular."""
    if not f.poly or not g.poly:
        raise ValueError("S-pair of a zero polynomial")
    ring = order.ring
    ell = ring.lcm(f.poly.lt, g.poly.lt)
    u = ell - f.poly.lt
    v = ell - g.poly.lt
    su = sig_mul(ring, u, f.sig)
    sv = sig_mul(ring, v, g.sig)
    if su == sv:
        return None
    return SPairRecord(su if order.key(su) > order.key(sv) else sv, Pair(idx_f, idx_g, u, v))


def canonical_rewriter(order: SigOrder, s: Signature, G: Sequence[SigPoly], fallback):
    """Latest-inserted basis element whose signature divides ``s``.

    Returns ``(element, multiplier)``; ``(fallback, 1)`` when nothing divides.
    The rewrite order is insertion order, so the last divisor wins.
    """
    ring = order.ring
    for g in reversed(G):
        if sig_divides(ring, g.sig, s):
            return g, s.term - g.sig.term
    return fallback, ring.one
