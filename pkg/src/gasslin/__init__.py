"""Colored braid closures: Gassner matrices, Alexander polynomials,
signatures, and the multivariable Casson-Lin invariant.

The public surface re-exports the main types and operations; the
submodules stay importable for the long tail (identity suites, Markov
moves, file parsing, solver internals).
"""

from .alexander import (
    LinkPolynomials,
    Potential,
    alexander_poly,
    casson_lin_defined,
    link_polynomials,
    potential,
    reducible_nonabelian_exists,
    torres_check,
)
from .braids import (
    ClosureInfo,
    ColoredBraidWord,
    format_braid_file,
    load_braid,
    parse_braid_file,
    random_cc_braid,
    shipped_braid_names,
)
from .cassonlin import (
    FixedPointResult,
    RepClass,
    casson_lin,
    crossing_delta,
    find_fixed_classes,
    intersection_sign,
    long_differential_check,
)
from .errors import GasslinError
from .gassner import gassner_reduced, gassner_unreduced, identity_suite
from .kernels import BACKEND as KERNEL_BACKEND
from .laurent import LaurentPoly, PolyMatrix, TorusPoint
from .signature import (
    SeifertSystem,
    SignaturePoint,
    builtin_names,
    builtin_system,
    crossing_change_delta,
    hermitian_form,
    load_system,
    parity_check,
    signature_nullity,
    theorem63_rhs,
)

__version__ = "0.1.0"

__all__ = [
    "ColoredBraidWord",
    "ClosureInfo",
    "LaurentPoly",
    "PolyMatrix",
    "TorusPoint",
    "LinkPolynomials",
    "Potential",
    "SeifertSystem",
    "SignaturePoint",
    "FixedPointResult",
    "RepClass",
    "GasslinError",
    "KERNEL_BACKEND",
    "alexander_poly",
    "builtin_names",
    "builtin_system",
    "casson_lin",
    "casson_lin_defined",
    "crossing_change_delta",
    "crossing_delta",
    "find_fixed_classes",
    "format_braid_file",
    "gassner_reduced",
    "gassner_unreduced",
    "hermitian_form",
    "identity_suite",
    "intersection_sign",
    "link_polynomials",
    "load_braid",
    "load_system",
    "long_differential_check",
    "parity_check",
    "parse_braid_file",
    "potential",
    "random_cc_braid",
    "reducible_nonabelian_exists",
    "shipped_braid_names",
    "signature_nullity",
    "theorem63_rhs",
    "torres_check",
]
