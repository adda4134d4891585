"""Seeded generator of dense quadratic systems with a planted solution.

Randomness comes from SplitMix64 so the same ``(n, m, p, seed)`` gives the
same system in any language::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                      # all arithmetic mod 2**64

A residue is drawn by rejection: discard outputs ``>= p * floor(2**64 / p)``
and return the rest modulo ``p``.

Draw order: the planted point ``a_1..a_n``; then per polynomial the
coefficients of ``x_i*x_j`` (``i <= j``, ascending ``(i, j)``), then of
``x_1..x_n``.  If all quadratic coefficients are zero the polynomial is
redrawn.  The constant term is ``-f(a)``.
"""
from __future__ import annotations

from .field import PrimeField
from .poly import PolyRing, Polynomial

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def residue(self, p: int) -> int:
        limit = (1 << 64) // p * p
        while True:
            x = self.next()
            if x < limit:
                return x % p


def gen_dense_quadratic(n: int, m: int, p: int = 101, seed: int = 0, order="grevlex"):
    """Return ``(F, point)``: ``m`` dense quadratics in ``n`` variables vanishing at ``point``."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    field = PrimeField(p)
    ring = PolyRing(n, field, order)
    rng = SplitMix64(seed)
    point = [rng.residue(p) for _ in range(n)]
    quad = [(i, j) for i in range(n) for j in range(i, n)]
    F: list[Polynomial] = []
    for _ in range(m):
        while True:
            qc = [rng.residue(p) for _ in quad]
            lc = [rng.residue(p) for _ in range(n)]
            if any(qc):
                break
        d = {}
        value = 0
        for (i, j), c in zip(quad, qc):
            if c:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                d[ring.term(e)] = c
                value += c * point[i] * point[j]
        for i, c in enumerate(lc):
            if c:
                e = [0] * n
                e[i] = 1
                d[ring.term(e)] = c
                value += c * point[i]
        d[ring.one] = -value % p
        F.append(ring.from_dict(d))
    return F, point
