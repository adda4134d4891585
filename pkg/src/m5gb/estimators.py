"""scikit-learn style front end.

``GroebnerBasis().fit(F)`` computes a basis of the ideal generated by ``F``;
``transform(X)`` maps polynomials to their normal forms modulo that basis, so
two polynomials are congruent modulo the ideal iff they transform equally.
"""
from __future__ import annotations

import time

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .algorithm import M5GBSolver, check_system
from .baseline import SBSolver, buchberger
from .poly import ORDERS, Polynomial, interreduce, reduce_ordinary
from .sig import SIG_ORDERS

_SOLVERS = {"m5gb": M5GBSolver, "sb": SBSolver}


def check_polynomials(X, ring=None) -> list[Polynomial]:
    """Validate and convert ``X`` to a list of polynomials over ``ring``."""
    if isinstance(X, Polynomial):
        X = [X]
    X = list(X)
    for k, f in enumerate(X):
        if not isinstance(f, Polynomial):
            raise TypeError(f"element {k} is {type(f).__name__}, expected Polynomial")
    if ring is not None:
        X = [ring.convert(f) for f in X]
    return X


class GroebnerBasis(TransformerMixin, BaseEstimator):
    """Groebner basis estimator.

    Parameters
    ----------
    algorithm : {"m5gb", "sb", "buchberger"}
    order : {"grevlex", "lex"}
        Term order of the computed basis.
    sig_order : {"pot", "top"}
        Module order of the signature algorithms (ignored by buchberger).
    reduced : bool
        Interreduce the result into the reduced Groebner basis.
    check_invariants : bool
        Enable the internal consistency assertions of the signature solvers.

    Attributes
    ----------
    basis_ : list of Polynomial
    stats_ : dict
    ring_ : PolyRing
    n_features_in_ : int
        Number of variables.
    """

    def __init__(self, algorithm="m5gb", order="grevlex", sig_order="pot", reduced=True,
                 check_invariants=False):
        self.algorithm = algorithm
        self.order = order
        self.sig_order = sig_order
        self.reduced = reduced
        self.check_invariants = check_invariants

    def _validate_params(self):
        if self.algorithm not in ("m5gb", "sb", "buchberger"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown order {self.order!r}")
        if self.sig_order not in SIG_ORDERS:
            raise ValueError(f"unknown sig_order {self.sig_order!r}")

    def fit(self, X, y=None):
        self._validate_params()
        F = check_polynomials(X)
        ring = check_system(F).with_order(self.order)
        F = [ring.convert(f) for f in F]
        if self.algorithm == "buchberger":
            start = time.perf_counter()
            G = buchberger(F)
            self.stats_ = {"basis_size": len(G), "wall_time": time.perf_counter() - start}
        else:
            solver = _SOLVERS[self.algorithm](F, None, self.sig_order, self.check_invariants)
            G, stats = solver.run()
            self.stats_ = stats.as_dict()
        self.basis_ = interreduce(G) if self.reduced else G
        self.ring_ = ring
        self.n_features_in_ = ring.nvars
        return self

    def transform(self, X):
        if not hasattr(self, "basis_"):
            raise NotFittedError("GroebnerBasis instance is not fitted yet")
        return [reduce_ordinary(f, self.basis_) for f in check_polynomials(X, self.ring_)]

    def contains(self, f: Polynomial) -> bool:
        """Ideal membership of ``f``."""
        return not self.transform([f])[0]
