"""Exact computational algebra for shifted graded Lie bialgebras.

The package builds graded Lie algebras with degree-shifted cobrackets,
checks the defining identities over exact rationals, and computes the
Chevalley-Eilenberg complex with its differential, shifted Poisson
bracket, BV operator and Laplacian, blockwise and without any floats.
"""

from .algebra import (AlgebraError, Bialgebra, BasisElement, BilinearForm,
                      CheckResult, GradedLie, ManinTriple, RMatrix,
                      ValidationReport, coboundary_cobracket,
                      double_of_bialgebra, dual_bialgebra,
                      involutivity_defect, manin_to_bialgebra,
                      restrict_bialgebra, validate_structures,
                      validate_triple)
from .catalog import (AssocAlgebra, end_graded, frobenius_loop, levi_l,
                      matrix_algebra, nilradical_n, parabolic_q,
                      scalar_algebra, standard_bialgebra,
                      standard_manin_triple, standard_structure,
                      theta_bialgebra, theta_triple)
from .cochain import (Cochain, CochainContext, CochainError, ModuleAction,
                      NonPointedConeError, NotACocycleError,
                      NotAModuleError, adjoint_module,
                      adjoint_squared_module, betti_table, bv_operator,
                      ce_differential, ce_differential_module,
                      cobracket_as_module_cochain, cohomology,
                      cohomology_bracket, cohomology_class_reduce,
                      format_cochain, format_monomial, kernel_complex_check,
                      laplacian, laplacian_eigen, laplacian_on_generators,
                      parse_generator_word, poisson_bracket,
                      poisson_compat_defect, validate_module,
                      weight_cohomology)
from .linalg import (NotSemisimpleError, Scalar, SparseMatrix,
                     SubspaceBasis, eigen_split, format_scalar,
                     linear_solve, parse_scalar, quotient_basis,
                     rank_kernel)
from .scenarios import (H0Presentation, Scenario, ScenarioError,
                        TruncationError, h0_presentation,
                        hochschild_serre_check, kirillov_kostant_table,
                        rcom, rcom_quotient_l1, rcom_quotient_theta, rpcom,
                        run_scenario, scenario_catalog)
from .serialize import (AlgebraFileError, canonical_json, dumps,
                        fingerprint, load, loads, save)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "AlgebraFileError", "AssocAlgebra", "BasisElement",
    "Bialgebra", "BilinearForm", "CheckResult", "Cochain", "CochainContext",
    "CochainError", "GradedLie", "H0Presentation", "ManinTriple",
    "ModuleAction", "NonPointedConeError", "NotACocycleError",
    "NotAModuleError", "NotSemisimpleError", "RMatrix", "Scalar",
    "Scenario", "ScenarioError", "SparseMatrix", "SubspaceBasis",
    "TruncationError", "ValidationReport", "adjoint_module",
    "adjoint_squared_module", "betti_table", "bv_operator",
    "canonical_json", "ce_differential", "ce_differential_module",
    "cobracket_as_module_cochain", "coboundary_cobracket", "cohomology",
    "cohomology_bracket", "cohomology_class_reduce", "double_of_bialgebra",
    "dual_bialgebra", "dumps", "eigen_split", "end_graded", "fingerprint",
    "format_cochain", "format_monomial", "format_scalar", "frobenius_loop",
    "h0_presentation", "hochschild_serre_check", "involutivity_defect",
    "kernel_complex_check", "kirillov_kostant_table", "laplacian",
    "laplacian_eigen", "laplacian_on_generators", "levi_l", "linear_solve",
    "load", "loads", "manin_to_bialgebra", "matrix_algebra",
    "nilradical_n", "parabolic_q", "parse_generator_word", "parse_scalar",
    "poisson_bracket", "poisson_compat_defect", "quotient_basis",
    "rank_kernel", "rcom", "rcom_quotient_l1", "rcom_quotient_theta",
    "restrict_bialgebra", "rpcom", "run_scenario", "save", "scalar_algebra",
    "scenario_catalog", "standard_bialgebra", "standard_manin_triple",
    "standard_structure", "theta_bialgebra", "theta_triple",
    "validate_module", "validate_structures", "validate_triple",
    "weight_cohomology",
]
