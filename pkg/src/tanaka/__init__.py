"""Exact-arithmetic prolongation of graded Lie algebras.

The package computes Tanaka prolongations of non-positively graded Lie
algebras over the rationals, the boundary maps and torsion spaces of
the associated reduction tower, and the quasi-gradation/lift calculus
on filtered vector spaces. Everything is exact: no floating point
enters any computation or report.
"""

from .exact_linear import Matrix, Subspace, complement, kernel, rank, solve
from .graded import (
    GradedMap,
    GradedSpace,
    HomogeneousMap,
    hom_basis,
    hom_coords,
    hom_space_dim,
    unipotent_inverse,
)
from .lie import (
    G0Spec,
    GradedLieAlgebra,
    adjoin_g0,
    bracket_eval,
    der0,
    der0_basis,
    is_fundamental,
    resolve_g0,
    validate,
)
from .filtered import (
    AdaptedGradation,
    FilteredSpace,
    GradedFrame,
    MLift,
    QuasiGradation,
    act_quasi,
    compatible_gradation,
    full_lift,
    gradation_of_quasi,
    is_compatible,
    make_filtered_from_graded,
    mlift_of_quasi,
    project_gradation,
    project_quasi,
    quasi_of_mlift,
    transition,
)
from .prolong import (
    ExtendedBracket,
    ProlongationLevel,
    ProlongationResult,
    ProlongationStatus,
    extended_bracket,
    jacobi_failures,
    order_and_bound,
    prolong,
    prolong_step,
)
from .torsion import (
    KernelReport,
    TorsionSpace,
    TowerReport,
    TowerRow,
    complement_w,
    gl_tail_dim,
    kernel_reports,
    partial1,
    partial1_matrix,
    partial_np1,
    partial_np1_matrix,
    torsion_space,
    tower_report,
)
from .catalog import entries, expected_oracle, make_algebra
from .jsonio import (
    AlgebraInputError,
    LoadedAlgebra,
    emit_algebra,
    emit_g0_generators,
    emit_result,
    emit_result_document,
    parse_algebra,
    parse_g0,
    parse_result,
)
from .selftest import SuiteReport, run_all, run_catalog_suite, run_filtered_suite

__all__ = [
    "Matrix", "Subspace", "complement", "kernel", "rank", "solve",
    "GradedMap", "GradedSpace", "HomogeneousMap",
    "hom_basis", "hom_coords", "hom_space_dim", "unipotent_inverse",
    "G0Spec", "GradedLieAlgebra", "adjoin_g0", "bracket_eval",
    "der0", "der0_basis", "is_fundamental", "resolve_g0", "validate",
    "AdaptedGradation", "FilteredSpace", "GradedFrame", "MLift",
    "QuasiGradation", "act_quasi", "compatible_gradation", "full_lift",
    "gradation_of_quasi", "is_compatible", "make_filtered_from_graded",
    "mlift_of_quasi", "project_gradation", "project_quasi",
    "quasi_of_mlift", "transition",
    "ExtendedBracket", "ProlongationLevel", "ProlongationResult",
    "ProlongationStatus", "extended_bracket", "jacobi_failures",
    "order_and_bound", "prolong", "prolong_step",
    "KernelReport", "TorsionSpace", "TowerReport", "TowerRow",
    "complement_w", "gl_tail_dim", "kernel_reports",
    "partial1", "partial1_matrix", "partial_np1", "partial_np1_matrix",
    "torsion_space", "tower_report",
    "entries", "expected_oracle", "make_algebra",
    "AlgebraInputError", "LoadedAlgebra", "emit_algebra",
    "emit_g0_generators", "emit_result", "emit_result_document",
    "parse_algebra", "parse_g0",
    "parse_result",
    "SuiteReport", "run_all", "run_catalog_suite", "run_filtered_suite",
]

__version__ = "0.1.0"
