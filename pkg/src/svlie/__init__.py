"""Exact symbolic engine for the twisted Schrodinger-Virasoro Lie algebra.

Scalars are Gaussian rationals, elements are finite linear combinations of
the basis {L[n], Y[n], M[n], C}, and every operation (brackets, derivation
rules, automorphisms, classification oracles) is computed in closed form
with equality checked exactly.
"""

from .algebra import (
    BasisVector,
    C,
    Element,
    L,
    M,
    Window,
    Y,
    ZERO_ELEMENT,
    bracket,
    bracket_basis,
    centralizer_window,
    degree,
    exp_ad,
    format_element,
    jacobi_residual,
    single,
)
from .autgroup import (
    AutomorphismParams,
    FactorizationError,
    FiniteSupportSeq,
    automorphism_window_map,
    compose,
    compose_oracle,
    factorize,
    identity,
    invert,
    is_automorphism_window,
    params_from_json,
    params_to_json,
)
from .derivations import (
    ClassifiedDerivation,
    DerivationError,
    DerivationParams,
    WindowMap,
    apply_classified,
    classified_window_map,
    classify_degree0,
    decompose,
    degree0_window_map,
    equivariant_hom_nullity,
    leibniz_check,
    outer_independence_kernel,
)
from .expr import parse_basis_vector, parse_element
from .scalar import (
    I,
    Matrix,
    ONE,
    ParseError,
    Scalar,
    ZERO,
    format_scalar,
    nullspace,
    parse_scalar,
)
from .autgroup import apply as apply_automorphism

__version__ = "0.1.0"
