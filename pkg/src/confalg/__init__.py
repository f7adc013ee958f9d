"""Exact lambda-bracket calculus for Lie conformal algebras, plus a
weight-truncated free boson vertex algebra to test it against."""
from .arith import Scalar, UniPoly, as_fraction, det_bareiss, nullspace, solve, substitute_shift
from .calculus import LambdaMuPoly, LambdaPoly, skew_transform
from .conformal import (
    AxiomReport,
    ConformalAlgebra,
    ConformalElement,
    GeneratorDecl,
    apply_partial,
    bracket,
    check_all,
    check_jacobi,
    check_sesquilinear,
    check_skew,
    check_structure,
)
from .dsl import ParseError, ParseErrors, SourceSpan, builtin, format_algebra, load, parse, parse_algebra, parse_element
from .errors import (
    ConfalgError,
    DeclarationError,
    LimitExceeded,
    UnsupportedConfiguration,
    UsageError,
    WindowRefused,
)
from .fock import (
    VACUUM,
    Cutoff,
    FockState,
    GradedSubspace,
    extract_conformal,
    fock_lambda_bracket,
    mode_action,
    parse_state,
    subspace_product,
    theorem_ideal_check,
    translation,
    verify_axioms,
    verify_borcherds,
    verify_skew_vertex,
    verify_wick,
)
from .lattice import Submodule, canonical_form, contains, module_equal, module_sum
from .report import Report
from .structure import centre, classify, derived_series, ideal_closure, is_central_ideal, is_ideal, lambda_coefficient_span
from .wick import factorial_det_check, factorial_matrix, forward_expand, separate, separation_window

__version__ = "0.1.0"
