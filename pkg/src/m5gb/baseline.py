"""Reference algorithms: textbook Buchberger and a plain signature-based solver."""
from __future__ import annotations

import heapq
import itertools
from typing import Sequence

from .algorithm import SignatureSolver, check_system
from .poly import Polynomial, reduce_ordinary, s_polynomial


class SBSolver(SignatureSolver):
    """Signature solver reducing by plain regular Sig-reduction.

    Shares queue, syzygy and rewriter handling with the cached solver; every
    reductor ``u*g`` is rebuilt from scratch at each step.
    """

    name = "sb"

    def reduce_round(self, body: dict, s: tuple) -> dict:
        p = self.p
        n = len(self.glt)
        glt, gpoly, divs = self.glt, self.gpoly, self.divs
        heap = [-t for t in body]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        bget = body.get
        done: dict = {}
        steps = 0
        while heap:
            t = -pop(heap)
            c = body.pop(t) % p
            if not c:
                continue
            entry = divs.get(t)
            cands = entry[1] if entry is not None and entry[0] == n else self.divisors(t)
            j = -1
            sk = s
            for jj, kk in cands:
                if kk < sk:
                    j = jj
                    sk = kk
            if j < 0:
                done[t] = c
                continue
            u = t - glt[j]
            # basis elements are monic, so the leading terms cancel exactly
            for gt, gc in itertools.islice(gpoly[j], 1, None):
                k = gt + u
                v = bget(k)
                if v is None:
                    body[k] = -c * gc
                    push(heap, -k)
                else:
                    body[k] = v - c * gc
            steps += 1
        self.stats.reduction_steps += steps
        return done


def sb_run(F: Sequence[Polynomial], term_order=None, sig_order="pot", check_invariants=False):
    return SBSolver(F, term_order, sig_order, check_invariants).run()


def buchberger(F: Sequence[Polynomial], order=None) -> list[Polynomial]:
    """Groebner basis by Buchberger's algorithm with the normal selection strategy.

    Only the coprime-leading-term criterion prunes pairs.
    """
    ring = check_system(F)
    if order is not None and ring.order.kind != str(getattr(order, "kind", order)):
        ring = ring.with_order(order)
        F = [ring.convert(f) for f in F]
    G: list[Polynomial] = []
    pairs: list = []
    counter = itertools.count()

    def add(h: Polynomial) -> None:
        h = h.monic()
        k = len(G)
        for j, g in enumerate(G):
            ell = ring.lcm(g.lt, h.lt)
            if ell == g.lt + h.lt:
                continue
            heapq.heappush(pairs, (ring.degree(ell), ell, next(counter), j, k))
        G.append(h)

    for f in F:
        r = reduce_ordinary(f, G) if G else f
        if r:
            add(r)
    while pairs:
        _, _, _, i, j = heapq.heappop(pairs)
        r = reduce_ordinary(s_polynomial(G[i], G[j]), G)
        if r:
            add(r)
    return G
