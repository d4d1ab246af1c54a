"""Exact exterior/Clifford algebra kernel.

Builds the exterior and complex Clifford algebras over 2M orthonormal
generators with exact Q(i, sqrt2) or complex-float coefficients, the
expectation functional driven by an orthogonal complex structure, the
normalized Clifford trace, and the ordering isomorphisms that identify
the two functionals. A verification suite machine-checks every identity.
"""

from ._accel import kernel_backend
from .berezin import OrderingContext
from .clifford import CliffordElement, from_vector
from .exterior import (
    ANTIHOM,
    HOM,
    GeneratorSubstitution,
    Multivector,
    Vector,
    ext_exp,
    substitute_generators,
    top_coefficient,
)
from .scalars import EXACT, ExactField, FloatField, Scalar
from .structure import (
    MINUS,
    PLUS,
    ComplexStructure,
    cayley_orthogonal,
    UnitaryBasis,
    basis_from_structure_float,
    eigenprojectors,
    gamma_ext,
    gamma_form,
    gamma_vec,
    interleaved_top_form,
    j_inner,
    omega_form,
    random_structure,
    standard_structure,
    validate_pair,
)
from .verify import VerifyReport, verify_suite

__version__ = "0.1.0"

__all__ = [
    "ANTIHOM",
    "CliffordElement",
    "ComplexStructure",
    "EXACT",
    "ExactField",
    "FloatField",
    "GeneratorSubstitution",
    "HOM",
    "MINUS",
    "Multivector",
    "OrderingContext",
    "PLUS",
    "Scalar",
    "UnitaryBasis",
    "Vector",
    "VerifyReport",
    "basis_from_structure_float",
    "cayley_orthogonal",
    "eigenprojectors",
    "ext_exp",
    "from_vector",
    "gamma_ext",
    "gamma_form",
    "gamma_vec",
    "interleaved_top_form",
    "j_inner",
    "kernel_backend",
    "omega_form",
    "random_structure",
    "standard_structure",
    "substitute_generators",
    "top_coefficient",
    "validate_pair",
    "verify_suite",
    "__version__",
]
