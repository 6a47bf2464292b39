"""Controllability analysis for quantum systems with Lie-algebraic symmetry.

Exact structure-constant algebras and their enveloping algebras, Lie
closures and the strong/approximate controllability criteria built on them,
matrix representations, and piecewise-constant dynamics experiments.
"""
from .algebra import (AlgebraElement, AlgebraError, AlgebraValidationError, StructureAlgebra,
                      adjoint, bracket, bracket_gen, specialize_central, verify_jacobi)
from .analysis import Caps, Verdict, classify, matrix_lie_dim, tangent_rank
from .closure import (BCCheck, Coverage, LieClosureResult, build_C, check_bc_in_b, lie_closure,
                      pbw_coverage)
from .dynamics import (ControlSchedule, FlowExperimentResult, PreconditionError, ReachResult,
                       attainability_experiment, expm_skew, propagate, reach_probe,
                       trotter_commutator_error, trotter_sum_error)
from .envelope import (EnvElement, env_adjoint, env_bracket, env_gen, env_scalar, env_unit,
                       multiply, normal_order, specialize_element)
from .gaussian import GaussianRational, gq
from .presets import PRESET_NAMES, UnknownPresetError, algebra, preset
from .rep import (RepError, RepSpec, env_to_matrix, gen_matrices, homomorphism_check,
                  nelson_delta, sobolev_norm)
from .systems import ControlSystem, SystemValidationError

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "AlgebraError", "AlgebraValidationError", "StructureAlgebra",
    "adjoint", "bracket", "bracket_gen", "specialize_central", "verify_jacobi",
    "Caps", "Verdict", "classify", "matrix_lie_dim", "tangent_rank",
    "BCCheck", "Coverage", "LieClosureResult", "build_C", "check_bc_in_b", "lie_closure",
    "pbw_coverage",
    "ControlSchedule", "FlowExperimentResult", "PreconditionError", "ReachResult",
    "attainability_experiment", "expm_skew", "propagate", "reach_probe",
    "trotter_commutator_error", "trotter_sum_error",
    "EnvElement", "env_adjoint", "env_bracket", "env_gen", "env_scalar", "env_unit",
    "multiply", "normal_order", "specialize_element",
    "GaussianRational", "gq",
    "PRESET_NAMES", "UnknownPresetError", "algebra", "preset",
    "RepError", "RepSpec", "env_to_matrix", "gen_matrices", "homomorphism_check",
    "nelson_delta", "sobolev_norm",
    "ControlSystem", "SystemValidationError",
    "__version__",
]
