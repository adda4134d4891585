"""Independent certification of computed bases.

Uses ordinary polynomial reduction only, never the signature machinery.
"""
from __future__ import annotations

from typing import Sequence

from .poly import Polynomial, interreduce, reduce_ordinary, s_polynomial


def is_groebner(G: Sequence[Polynomial], order=None) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero modulo ``G``."""
    G = _in_order([g for g in G], order)
    if any(not g for g in G):
        raise ValueError("basis contains the zero polynomial")
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if reduce_ordinary(s_polynomial(G[i], G[j]), G):
                return False
    return True


def reduced_gb_equal(G1: Sequence[Polynomial], G2: Sequence[Polynomial], order=None) -> bool:
    return interreduce(_in_order(G1, order)) == interreduce(_in_order(G2, order))


def in_ideal(f: Polynomial, G: Sequence[Polynomial], order=None) -> bool:
    """Membership test, valid when ``G`` is a Groebner basis."""
    G = _in_order(G, order)
    if G:
        f = G[0].ring.convert(f)
    return not reduce_ordinary(f, G)


def vanishes_at(F: Sequence[Polynomial], point: Sequence[int]) -> bool:
    return all(f.evaluate(point) == 0 for f in F)


def _in_order(G, order) -> list[Polynomial]:
    G = list(G)
    if order is None or not G:
        return G
    ring = G[0].ring.with_order(order)
    return [ring.convert(g) for g in G]
