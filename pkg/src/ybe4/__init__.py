"""Unitary 4x4 solutions of the Yang-Baxter equation.

Construction of the five solution families, residual-based verification,
an eigenvalue filter for scanning candidate inventories, entanglement
classification of the resulting two-qubit gates, and the Kauffman-bracket
skein subfamily.
"""

from .bracket import (
    BracketParams,
    BracketReduction,
    SkeinTriple,
    bracket_R,
    bracket_to_family,
    delta_lower_bound,
    loop_value,
    odot,
    skein_delta,
    unitary_bracket_family,
)
from .classify import (
    ClassificationResult,
    GateEntanglementReport,
    ProductWitness,
    TwoQubitState,
    classify,
    is_entangling_gate,
    is_product_state,
    realign,
)
from .core import (
    BraidWord,
    algebraic_residual,
    braid_rep,
    braided_residual,
    compose_with_swap,
    contraction_residual,
    is_algebraic_solution,
    is_braided_solution,
    swap_matrix,
)
from .errors import (
    ConstraintViolation,
    DegenerateParameter,
    DimensionError,
    NonConvergence,
    NotASolution,
    NotUnitary,
    ParseError,
    PreconditionFailed,
    SingularMatrix,
    SizeExceeded,
    Ybe4Error,
)
from .families import (
    FAMILY_NAMES,
    CandidateRep,
    FamilySpec,
    GramData,
    case_matrix,
    d_matrix,
    eigenvalue_filter,
    f2_params,
    family_member,
    family_representative,
    gram,
    hietarinta_candidates,
    random_family_spec,
    run_elimination,
    validate_spec,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    char_poly,
    dagger,
    eigenvalues,
    frobenius,
    inverse,
    is_unitary,
    kron,
)
from .matrixio import read_matrix_file, write_matrix_file

__version__ = "0.1.0"

__all__ = [
    "Ybe4Error",
    "SingularMatrix",
    "NonConvergence",
    "SizeExceeded",
    "ConstraintViolation",
    "NotUnitary",
    "NotASolution",
    "PreconditionFailed",
    "DegenerateParameter",
    "ParseError",
    "DimensionError",
    "Tolerance",
    "DEFAULT_TOL",
    "kron",
    "dagger",
    "frobenius",
    "inverse",
    "char_poly",
    "eigenvalues",
    "is_unitary",
    "swap_matrix",
    "braided_residual",
    "algebraic_residual",
    "contraction_residual",
    "is_braided_solution",
    "is_algebraic_solution",
    "compose_with_swap",
    "BraidWord",
    "braid_rep",
    "FAMILY_NAMES",
    "FamilySpec",
    "GramData",
    "gram",
    "d_matrix",
    "f2_params",
    "family_representative",
    "validate_spec",
    "family_member",
    "random_family_spec",
    "eigenvalue_filter",
    "CandidateRep",
    "hietarinta_candidates",
    "case_matrix",
    "run_elimination",
    "TwoQubitState",
    "is_product_state",
    "realign",
    "ProductWitness",
    "GateEntanglementReport",
    "is_entangling_gate",
    "ClassificationResult",
    "classify",
    "BracketParams",
    "SkeinTriple",
    "BracketReduction",
    "odot",
    "loop_value",
    "skein_delta",
    "bracket_R",
    "unitary_bracket_family",
    "delta_lower_bound",
    "bracket_to_family",
    "read_matrix_file",
    "write_matrix_file",
    "__version__",
]
