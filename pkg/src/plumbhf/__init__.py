"""Exact invariants of negative-definite plumbed 3-manifolds.

Builds intersection forms of plumbing trees, runs the lattice tau
computation, assembles graded roots with their conjugation action, and
evaluates a surgery formula for tau together with an F2 obstruction to
the existence of symplectic structures. Everything is exact: integers
and Fractions throughout, no floating point.
"""

from .lattice import (
    GraphStructureError,
    PlumbingGraph,
    RationalMatrix,
    SingularMatrixError,
    SymIntMatrix,
    canonical_char_vector,
    char_shift,
    definiteness,
    determinant_exact,
    grading_constant,
    intersection_form,
    inverse_exact,
    is_characteristic,
    k_squared,
    pairing,
    solve_exact,
)
from .seifert import (
    SeifertData,
    StarArm,
    brieskorn_graph,
    eval_cont_frac,
    euler_number,
    neg_cont_frac,
    normalized_seifert,
    star_data,
)
from .laufer import (
    IterationCapError,
    NotAlmostRationalError,
    NotNegativeDefiniteError,
    TauSequence,
    UnstabilizedError,
    chi,
    default_cutoff,
    fundamental_cycle,
    is_almost_rational,
    stabilization_window,
    tau_sequence,
)
from .roots import (
    BasisElement,
    CanonicalBasis,
    ConjugationSymmetryError,
    GradedRoot,
    canonical_basis,
    d_invariant,
    graded_root,
)
from .oracle import (
    BoxTooLargeError,
    LevelRangeError,
    enumeration_cap,
    oracle_graded_root,
    suggested_box_radius,
)
from .kernels import available_kernels, get_kernel, kernel_name
from .tau import (
    PresentationError,
    SurgeryPresentation,
    TauPair,
    lagrangian_slice_genus,
    tau_pair,
)
from .obstruction import (
    F2Class,
    InconsistencyError,
    ObstructionContext,
    adjunction_filter,
    candidate_classes,
    exotic_pair_check,
    reversed_orientation_class,
    symplectic_verdict,
)
from .graphio import (
    DocumentError,
    document_to_graph,
    dumps_document,
    graph_to_document,
    load_graph,
    save_graph,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # lattice
    "GraphStructureError",
    "PlumbingGraph",
    "RationalMatrix",
    "SingularMatrixError",
    "SymIntMatrix",
    "canonical_char_vector",
    "char_shift",
    "definiteness",
    "determinant_exact",
    "grading_constant",
    "intersection_form",
    "inverse_exact",
    "is_characteristic",
    "k_squared",
    "pairing",
    "solve_exact",
    # seifert
    "SeifertData",
    "StarArm",
    "brieskorn_graph",
    "eval_cont_frac",
    "euler_number",
    "neg_cont_frac",
    "normalized_seifert",
    "star_data",
    # laufer
    "IterationCapError",
    "NotAlmostRationalError",
    "NotNegativeDefiniteError",
    "TauSequence",
    "UnstabilizedError",
    "chi",
    "default_cutoff",
    "fundamental_cycle",
    "is_almost_rational",
    "stabilization_window",
    "tau_sequence",
    # roots
    "BasisElement",
    "CanonicalBasis",
    "ConjugationSymmetryError",
    "GradedRoot",
    "canonical_basis",
    "d_invariant",
    "graded_root",
    # oracle + kernels
    "BoxTooLargeError",
    "LevelRangeError",
    "enumeration_cap",
    "oracle_graded_root",
    "suggested_box_radius",
    "available_kernels",
    "get_kernel",
    "kernel_name",
    # tau
    "PresentationError",
    "SurgeryPresentation",
    "TauPair",
    "lagrangian_slice_genus",
    "tau_pair",
    # obstruction
    "F2Class",
    "InconsistencyError",
    "ObstructionContext",
    "adjunction_filter",
    "candidate_classes",
    "exotic_pair_check",
    "reversed_orientation_class",
    "symplectic_verdict",
    # io
    "DocumentError",
    "document_to_graph",
    "dumps_document",
    "graph_to_document",
    "load_graph",
    "save_graph",
]
