"""Signature-based Groebner bases with cached tail-reduced reductors.

:class:`SignatureSolver` runs the signature main loop.  S-pairs are handled in
strictly increasing signature and pairs sharing a signature collapse into the
canonical rewriter; signatures divisible by a known syzygy signature are
skipped.  Subclasses only supply the reduction routine.

:class:`M5GBSolver` reduces with monic reductors kept in a cache ``M``.  A
cached reductor is tail-irreducible in the signature sense up to the round it
was built in; it records the basis size at that time (its *generation*) and
the smallest signature at which one of its tail terms becomes reducible (its
*flag*).  On reuse it is refreshed only if the basis has grown since
(generation check) or the current signature passed its flag.

Internally signatures are tuples produced by :class:`~m5gb.sig.SigOrder`,
polynomials are ``{term: coeff}`` dicts or descending ``(term, coeff)`` lists.
"""
from __future__ import annotations

import heapq
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .poly import PolyRing, Polynomial
from .sig import INF, INF_KEY, SigOrder, SigPoly, Signature

_MIN_RECURSION = 20000


class InvariantError(AssertionError):
    """An internal invariant of a signature run was violated."""


@dataclass
class RunStats:
    reduction_steps: int = 0
    spairs_processed: int = 0
    spairs_skipped_syzygy: int = 0
    spairs_skipped_duplicate: int = 0
    spairs_skipped_singular: int = 0
    zero_reductions: int = 0
    basis_size: int = 0
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


class Reductor:
    """Monic cached reductor; ``tail`` excludes the leading term."""

    __slots__ = ("lt", "tail", "sig", "gen", "hasdiv", "flag")

    def __init__(self, lt, tail, sig, gen, hasdiv):
        self.lt = lt
        self.tail = tail
        self.sig = sig
        self.gen = gen
        self.hasdiv = hasdiv
        self.flag = None if hasdiv else INF_KEY

    def poly_dict(self) -> dict:
        d = dict(self.tail)
        d[self.lt] = 1
        return d


def check_system(F: Sequence[Polynomial]) -> PolyRing:
    """Validate a nonempty list of nonzero polynomials over one ring."""
    F = list(F)
    if not F:
        raise ValueError("empty input system")
    ring = None
    for k, f in enumerate(F):
        if not isinstance(f, Polynomial):
            raise TypeError(f"input {k} is {type(f).__name__}, expected Polynomial")
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise ValueError("input polynomials live in different rings")
        if not f:
            raise ValueError(f"input polynomial {k} is zero")
    return ring


class SignatureSolver:
    """Shared state and main loop of the signature algorithms.

    The state mirrors the usual ``(G, P, H)`` triple plus a divisor index that
    memoizes, per term, which basis leading terms divide it.
    """

    name = "signature"

    def __init__(self, F: Sequence[Polynomial], term_order=None, sig_order="pot",
                 check_invariants: bool = False):
        ring = check_system(F)
        if term_order is not None and ring.order.kind != str(getattr(term_order, "kind", term_order)):
            ring = ring.with_order(term_order)
            F = [ring.convert(f) for f in F]
        self.ring = ring
        self.p = ring.p
        self.order = sig_order if isinstance(sig_order, SigOrder) else SigOrder(ring, sig_order)
        self.check = check_invariants
        self.inputs = [list(f.items()) for f in F]
        self.stats = RunStats()

        # basis G: signature keys, monic polys as descending item lists, leading terms
        self.gsig: list[tuple] = []
        self.gpoly: list[list] = []
        self.glt: list[int] = []
        self.gpacked: list[int] = []
        self.gexps: list[tuple] = []
        self._by_index: dict[int, list] = {}
        # syzygy signatures, kept minimal under divisibility: index -> [(term, packed)]
        self.H: dict[int, list] = {}
        self.P: list = []
        self._seq = 0
        # divisor index: term -> [basis prefix scanned, [(j, sig(u*g_j)), ...]]
        self.divs: dict[int, list] = {}
        self._last_round = None
        self.round_sig = None

        self._packed = ring.packed
        self._guard = ring._guard
        self._key_mul = self.order.key_mul
        self._pot = self.order.kind == "pot"

    # -- small helpers ---------------------------------------------------

    def _sig_index(self, k):
        return k[0] if self._pot else k[1]

    def _sig_term(self, k):
        return k[1] if self._pot else k[0]

    def _push(self, key, origin):
        self._seq += 1
        heapq.heappush(self.P, (key, self._seq, origin))

    def divisors(self, t: int) -> list:
        """All ``(j, sig(u*g_j))`` with ``LT(g_j) | t`` over the current basis."""
        entry = self.divs.get(t)
        n = len(self.glt)
        if entry is None:
            entry = self.divs[t] = [0, []]
        k = entry[0]
        if k < n:
            g = self._guard
            et = self._packed(t) | g
            found = entry[1]
            gp, glt, gsig, kmul = self.gpacked, self.glt, self.gsig, self._key_mul
            for j in range(k, n):
                if (et - gp[j]) & g == g:
                    found.append((j, kmul(t - glt[j], gsig[j])))
            entry[0] = n
        return entry[1]

    def best_divisor(self, t: int, s: tuple, lo: int = 0, hi: Optional[int] = None):
        """Basis element giving the smallest signature ``sig(u*g) < s`` at ``t``."""
        if hi is None:
            hi = len(self.glt)
        best = None
        for j, sk in self.divisors(t):
            if lo <= j < hi and sk < s and (best is None or sk < best[1]):
                best = (j, sk)
        return best

    # -- syzygies ---------------------------------------------------------

    def syzygy_skip(self, s: tuple) -> bool:
        hs = self.H.get(self._sig_index(s))
        if not hs:
            return False
        g = self._guard
        es = self._packed(self._sig_term(s)) | g
        for _, eh in hs:
            if (es - eh) & g == g:
                return True
        return False

    def add_syzygy(self, s: tuple) -> None:
        if self.check and s == INF_KEY:
            raise InvariantError("infinite syzygy signature")
        if self.syzygy_skip(s):
            return
        i = self._sig_index(s)
        t = self._sig_term(s)
        et = self._packed(t)
        g = self._guard
        hs = self.H.setdefault(i, [])
        hs[:] = [(ht, eh) for ht, eh in hs if ((eh | g) - et) & g != g]
        hs.append((t, et))

    def syzygy_signatures(self) -> list[Signature]:
        return sorted(
            (Signature(i, t) for i, hs in self.H.items() for t, _ in hs),
            key=self.order.key,
        )

    # -- basis update -----------------------------------------------------

    def rewriter(self, s: tuple) -> Optional[int]:
        """Index of the latest basis element whose signature divides ``s``."""
        lst = self._by_index.get(self._sig_index(s))
        if not lst:
            return None
        g = self._guard
        es = self._packed(self._sig_term(s)) | g
        for j, et in reversed(lst):
            if (es - et) & g == g:
                return j
        return None

    def update(self, s: tuple, items: list) -> None:
        """Append a monic element with signature ``s`` and queue its S-pairs."""
        ring = self.ring
        if self.gsig and not s > self.gsig[-1]:
            raise InvariantError("new basis signature is not larger than all previous ones")
        if not items:
            raise InvariantError("zero polynomial added to the basis")
        lt = items[0][0]
        exps = ring.exponents(lt)
        kmul = self._key_mul
        for j, (glt, gexps) in enumerate(zip(self.glt, self.gexps)):
            ell = ring.term([a if a > b else b for a, b in zip(exps, gexps)])
            su = kmul(ell - lt, s)
            sv = kmul(ell - glt, self.gsig[j])
            if su != sv:
                self._push(su if su > sv else sv, (len(self.glt), j))
        if self._sig_term(s) == 0:
            # Koszul syzygies against the input polynomial f_i
            i = self._sig_index(s)
            flt = self.inputs[i - 1][0][0]
            make = self.order.make_key
            for j, glt in enumerate(self.glt):
                a = make(i, glt)
                b = kmul(flt, self.gsig[j])
                if a != b:
                    self.add_syzygy(a if a > b else b)
        j = len(self.glt)
        self.gsig.append(s)
        self.gpoly.append(items)
        self.glt.append(lt)
        self.gpacked.append(self._packed(lt))
        self.gexps.append(exps)
        self._by_index.setdefault(self._sig_index(s), []).append((j, self._packed(self._sig_term(s))))

    # -- main loop ----------------------------------------------------------

    def reduce_round(self, body: dict, s: tuple) -> dict:
        raise NotImplementedError

    def run(self):
        if sys.getrecursionlimit() < _MIN_RECURSION:
            sys.setrecursionlimit(_MIN_RECURSION)
        start = time.perf_counter()
        stats = self.stats
        make = self.order.make_key
        for i in range(1, len(self.inputs) + 1):
            self._push(make(i, 0), i)
        P = self.P
        while P:
            s, _, _ = heapq.heappop(P)
            while P and P[0][0] == s:
                heapq.heappop(P)
                stats.spairs_skipped_duplicate += 1
            if self.check and self._last_round is not None and not s > self._last_round:
                raise InvariantError("round signatures are not strictly increasing")
            self._last_round = s
            if self.syzygy_skip(s):
                stats.spairs_skipped_syzygy += 1
                continue
            stats.spairs_processed += 1
            self.round_sig = s
            j = self.rewriter(s)
            if j is None:
                if self._sig_term(s) != 0:
                    raise InvariantError("signature without rewriter is not a unit vector")
                body = dict(self.inputs[self._sig_index(s) - 1])
            else:
                u = self._sig_term(s) - self._sig_term(self.gsig[j])
                body = {t + u: c for t, c in self.gpoly[j]}
            body = self.reduce_round(body, s)
            if not body:
                stats.zero_reductions += 1
                self.add_syzygy(s)
                continue
            lt = max(body)
            if any(sk == s for _, sk in self.divisors(lt)):
                # singularly top-reducible: redundant for the basis
                stats.spairs_skipped_singular += 1
                continue
            inv = pow(body[lt], -1, self.p)
            p = self.p
            items = sorted(((t, c * inv % p) for t, c in body.items()), reverse=True)
            self.update(s, items)
        stats.basis_size = len(self.glt)
        stats.wall_time = time.perf_counter() - start
        if self.check:
            self.check_rewrite_order()
        return self.basis(), stats

    # -- output / introspection ---------------------------------------------

    def basis(self) -> list[Polynomial]:
        ring = self.ring
        return [Polynomial(ring, tuple(t for t, _ in it), tuple(c for _, c in it)) for it in self.gpoly]

    def sig_basis(self) -> list[SigPoly]:
        return [SigPoly(self.order.from_key(k), f) for k, f in zip(self.gsig, self.basis())]

    def check_rewrite_order(self) -> None:
        """sig(g_a) | sig(g_b) must imply a <= b in insertion order."""
        ring = self.ring
        for a, ka in enumerate(self.gsig):
            for b in range(a):
                kb = self.gsig[b]
                if (self._sig_index(ka) == self._sig_index(kb)
                        and ring.divides(self._sig_term(ka), self._sig_term(kb))):
                    raise InvariantError("rewrite order violates signature divisibility")


class M5GBSolver(SignatureSolver):
    """Signature algorithm whose reductions use cached tail-reduced reductors."""

    name = "m5gb"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.M: dict[int, Reductor] = {}

    def reduce_round(self, body: dict, s: tuple) -> dict:
        p = self.p
        self.reduce(body, s, sorted(body, reverse=True), s, 0, len(self.glt))
        return {t: c % p for t, c in body.items() if c % p}

    def flag(self, m: Reductor) -> tuple:
        """Signature flag of ``m`` over the basis prefix of its generation."""
        if m.flag is None:
            gen = m.gen
            best = INF_KEY
            for t, _ in m.tail:
                for j, sk in self.divisors(t):
                    if j < gen and sk < best:
                        best = sk
            m.flag = best
        return m.flag

    def flag_of_term(self, t: int) -> tuple:
        best = INF_KEY
        for _, sk in self.divisors(t):
            if sk < best:
                best = sk
        return best

    def reduce(self, f: dict, fsig: tuple, D: list, s: tuple, lo: int, hi: int, bound=None) -> tuple:
        """Reduce the terms ``D`` of ``f`` (in place) up to signature ``s``.

        Only basis elements ``lo <= j < hi`` are searched for new reductors;
        cached reductors are always usable.  Coefficients of ``f`` are kept
        unreduced (any integer representative) and cancelled terms may remain.
        Returns the updated signature bound of ``f``.
        """
        M = self.M
        p = self.p
        n = len(self.glt)
        divs = self.divs
        fget = f.get
        check = self.check
        if check and bound is not None and D and D[0] >= bound:
            raise InvariantError("recursive reduction does not strictly descend")
        steps = 0
        for t in D:
            c = fget(t)
            if not c:
                continue
            c %= p
            if not c:
                continue
            m = M.get(t)
            if m is not None:
                if m.gen < n:
                    del M[t]
                    body = m.poly_dict()
                    sb = self.reduce(body, m.sig, [u for u, _ in m.tail], s, m.gen, n, t)
                    if self.flag(m) < s:
                        sb = self.reduce(body, sb, sorted((u for u in body if u != t), reverse=True),
                                         s, 0, m.gen, t)
                    m = self.update_m(t, body, sb)
                elif m.flag is not None and m.flag >= s:
                    pass
                elif self.flag(m) < s:
                    del M[t]
                    body = m.poly_dict()
                    sb = self.reduce(body, m.sig, [u for u, _ in m.tail], s, 0, n, t)
                    m = self.update_m(t, body, sb)
            else:
                entry = divs.get(t)
                cands = entry[1] if entry is not None and entry[0] == n else self.divisors(t)
                j = -1
                sk = s
                for jj, kk in cands:
                    if kk < sk and lo <= jj < hi:
                        j = jj
                        sk = kk
                if j < 0:
                    continue
                u = t - self.glt[j]
                items = self.gpoly[j]
                body = {gt + u: gc for gt, gc in items}
                sb = self.reduce(body, sk, [gt + u for gt, _ in items[1:]], s, 0, n, t)
                m = self.update_m(t, body, sb)
            # f -= c * m  (m is monic with leading term t)
            del f[t]
            for u, d in m.tail:
                f[u] = fget(u, 0) - c * d
            steps += 1
            if m.sig > fsig:
                fsig = m.sig
        self.stats.reduction_steps += steps
        if check:
            self._check_reduced(f, D, s, lo, hi)
        return fsig

    def update_m(self, t: int, body: dict, sb: tuple) -> Reductor:
        """Normalize ``body`` to a monic reductor with leading term ``t`` and cache it."""
        p = self.p
        inv = pow(body.pop(t), -1, p)
        tail = [(u, c * inv % p) for u, c in body.items() if c % p]
        tail.sort(reverse=True)
        n = len(self.glt)
        hasdiv = False
        divs = self.divs
        for u, _ in tail:
            entry = divs.get(u)
            if entry is not None and entry[1]:
                hasdiv = True
                break
            if entry is None or entry[0] < n:
                if self.divisors(u):
                    hasdiv = True
                    break
        m = Reductor(t, tail, sb, n, hasdiv)
        if self.check:
            s = self.round_sig
            if t in self.M:
                raise InvariantError("leading term already present in the reductor cache")
            if tail and tail[0][0] >= t:
                raise InvariantError("reductor leading term is not maximal")
            if s is not None and not sb < s:
                raise InvariantError("reductor signature bound is not below the round signature")
            if hasdiv is False:
                for u, _ in tail:
                    if self.divisors(u):
                        raise InvariantError("has-divisor bit is wrong")
            if s is not None and not self.flag(m) >= s:
                raise InvariantError("reductor flag is below the round signature after refresh")
        self.M[t] = m
        return m

    def _check_reduced(self, f: dict, D: list, s: tuple, lo: int, hi: int) -> None:
        for t in D:
            if f.get(t, 0) % self.p and self.best_divisor(t, s, lo, hi) is not None:
                raise InvariantError("term left Sig-reducible after Reduce")

    # -- public wrappers around the internal representation -----------------

    def reduce_sigpoly(self, f: SigPoly, s: Signature, terms=None, lo: int = 0, hi: Optional[int] = None):
        """Reduce ``f`` over ``terms`` (default: all its terms) up to ``s``.

        Returns ``(SigPoly, bound)`` where the signature of the result is the
        exact input signature and ``bound`` the tracked upper bound.
        """
        key = self.order.key
        ring = self.ring
        body = f.poly.to_dict()
        D = sorted(body if terms is None else terms, reverse=True)
        if hi is None:
            hi = len(self.glt)
        self.round_sig = key(s)
        sb = self.reduce(body, key(f.sig), D, key(s), lo, hi)
        p = self.p
        body = {t: c % p for t, c in body.items() if c % p}
        return SigPoly(f.sig, ring.from_dict(body)), self.order.from_key(sb)

    def add_basis_element(self, f: SigPoly) -> None:
        """Run the basis update for ``f`` (made monic)."""
        poly = f.poly.monic()
        self.update(self.order.key(f.sig), list(poly.items()))

    def reductors(self) -> dict:
        """Cached reductors as ``{leading term: Polynomial}``."""
        ring = self.ring
        return {t: ring.from_dict(m.poly_dict()) for t, m in self.M.items()}


def m5gb_run(F: Sequence[Polynomial], term_order=None, sig_order="pot", check_invariants=False):
    """Groebner basis of ``<F>`` (not interreduced) and run statistics."""
    solver = M5GBSolver(F, term_order, sig_order, check_invariants)
    return solver.run()
