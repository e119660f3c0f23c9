"""Exact toric geometry toolkit: fans, Cox gradings, projective bundles, automorphism roots."""
from pathlib import Path

from .automorphisms import (
    AutReport,
    Root,
    RootSplit,
    aut_report,
    demazure_crosscheck,
    enumerate_roots,
    levi_structure,
    moduli_dimension,
    split_roots_of_projectivization,
)
from .cox import (
    CayleyForm,
    GradedPolynomial,
    GradedSubstitution,
    apply_substitution,
    cayley_form,
    extract_coefficients,
    nondegenerate,
    parse_polynomial,
)
from .divisors import (
    SupportFunction,
    TorusInvariantDivisor,
    is_ample,
    is_cartier,
    monomials_of_degree,
    polytope_lattice_points,
    support_function,
)
from .fan import Fan, GradingData, class_group, is_complete, is_smooth, validate_fan
from .lattice import AbelianGroupPresentation, cokernel, kernel_basis, smith_normal_form
from .projectivization import BundleSpec, ProjectivizedFan, picard_of_projectivization, projectivize

CORPUS = Path(__file__).parent / "corpus"

__version__ = "0.1.0"
