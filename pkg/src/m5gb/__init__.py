"""Groebner bases over prime fields with signature-based S-pair criteria and
cached tail-reduced reductors."""
from .algorithm import M5GBSolver, RunStats, SignatureSolver, m5gb_run
from .baseline import SBSolver, buchberger, sb_run
from .estimators import GroebnerBasis
from .field import PrimeField
from .gensys import gen_dense_quadratic
from .poly import PolyRing, Polynomial, TermOrder, interreduce, reduce_ordinary
from .sig import INF, SigOrder, SigPoly, Signature
from .verify import is_groebner, reduced_gb_equal, vanishes_at

__all__ = [
    "GroebnerBasis", "INF", "M5GBSolver", "PolyRing", "Polynomial", "PrimeField", "RunStats",
    "SBSolver", "SigOrder", "SigPoly", "Signature", "SignatureSolver", "TermOrder",
    "buchberger", "gen_dense_quadratic", "interreduce", "is_groebner", "m5gb_run",
    "reduce_ordinary", "reduced_gb_equal", "sb_run", "vanishes_at",
]
