"""Bispectral operator pairs from Weyl algebra automorphisms.

Thin Python surface over the C++ core: exact normal-ordered operator
algebra, automorphism words, classification, contour quadrature of the
joint eigenfunction psi(x,z), and the verification harness.
"""

try:
    from ._bispectral import *  # noqa: F401,F403
    from ._bispectral import __doc__ as _core_doc  # noqa: F401
except ImportError:  # build-tree layout: module next to the package
    from _bispectral import *  # noqa: F401,F403

__all__ = [
    "Word",
    "parse_poly",
    "poly_coeffs",
    "normalize_operator",
    "multiply",
    "commutator",
    "apply_to_monomial",
    "order_and_degree",
    "compose_poly",
    "b0",
    "apply_word",
    "operators",
    "classify",
    "convergence_check",
    "eval_psi",
    "verify",
    "symmetry_report",
    "cross_check_derivatives",
    "ConvergenceError",
    "TruncationError",
    "ParseError",
]
