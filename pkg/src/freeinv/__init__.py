"""Spectral-sequence engine for free involutions on mod-2 cohomology
products of three spheres."""
from .fiber import (FiberAlgebra, Involution, SphereTriple, build_fiber_algebra,
                    enumerate_involutions, fixed_point_obstruction, multiply,
                    permanent_classes)
from .gf2 import BitMatrix, SubQuotient, Subspace, image_basis, kernel_basis, membership, rank, subquotient_reps
from .pages import (Assignment, EInfinity, Page, build_e2, leibniz_extend, parse_assignment,
                    run, turn_page)
from .patterns import (DifferentialPattern, Verdict, admissible_set, check_admissible,
                       enumerate_patterns)
from .results import (PoincarePolynomial, RingPresentation, cohomology_index,
                      extract_presentation, index_report, poincare, volovikov_index)
from .cases import match_theorem, verify_case
from .oracle import projective_complex, quotient_poincare, sphere_complex, tensor

__version__ = "0.1.0"

__all__ = [
    "Assignment", "BitMatrix", "DifferentialPattern", "EInfinity", "FiberAlgebra",
    "Involution", "Page", "PoincarePolynomial", "RingPresentation", "SphereTriple",
    "SubQuotient", "Subspace", "Verdict", "admissible_set", "build_e2",
    "build_fiber_algebra", "check_admissible", "cohomology_index", "enumerate_involutions",
    "enumerate_patterns", "extract_presentation", "fixed_point_obstruction", "image_basis",
    "index_report", "kernel_basis", "leibniz_extend", "match_theorem", "membership",
    "multiply", "parse_assignment", "permanent_classes", "poincare", "projective_complex",
    "quotient_poincare", "rank", "run", "sphere_complex", "subquotient_reps", "tensor",
    "turn_page", "verify_case", "volovikov_index",
]
