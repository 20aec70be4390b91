"""Exact algorithms for torus-invariant equivalence relations on affine toric varieties."""

__version__ = "0.1.0"

from .amitsur import AmitsurComplex, cocycle_reduce, cohomology_table
from .equiv import (ToricRelation, certify_noneffective, difference, difference_ideal,
                    effectivize, invariant_functions, relation_new, verify_axioms)
from .monoid import AffineMonoid, QuotientMonoid, hom_new, presentation
from .problem import load_problem, parse_problem
from .quotient import finiteness, invariant_monoid, quotient_compute
from .tensor import TensorPower

__all__ = [
    "AffineMonoid", "AmitsurComplex", "QuotientMonoid", "TensorPower", "ToricRelation",
    "certify_noneffective", "cocycle_reduce", "cohomology_table", "difference",
    "difference_ideal", "effectivize", "finiteness", "hom_new", "invariant_functions",
    "invariant_monoid", "load_problem", "parse_problem", "presentation", "quotient_compute",
    "relation_new", "verify_axioms",
]
