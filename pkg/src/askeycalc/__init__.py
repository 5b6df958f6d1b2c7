"""Divided-difference calculus on quadratic lattices and the classical
hypergeometric polynomials it produces."""
from .errors import CalculusError
from .estimator import HypergeometricEigenbasis
from .families import (askey_wilson, cross_check, family_closed_form, hahn, jacobi,
                       make_family, qhahn, wilson)
from .hyperop import (HProblem, Normalization, eigen_matrix_oracle, eigenfunction,
                      find_theta0, op_L)
from .operators import (op_D, op_partial, op_S, phi, taylor_coeffs, taylor_reconstruct)
from .ortho import gram, measure, wronskian
from .poly import LaurentPoly, Poly
from .pseq import Form, PSeq, SymP, affine_act, canonical, classify, make_pseq
from .rodrigues import RationalFactored, solve_feq, solve_rho
from .scalars import QContext

__version__ = "0.1.0"

__all__ = [
    "CalculusError", "HypergeometricEigenbasis", "askey_wilson", "cross_check",
    "family_closed_form", "hahn", "jacobi", "make_family", "qhahn", "wilson",
    "HProblem", "Normalization", "eigen_matrix_oracle", "eigenfunction", "find_theta0",
    "op_L", "op_D", "op_partial", "op_S", "phi", "taylor_coeffs", "taylor_reconstruct",
    "gram", "measure", "wronskian", "LaurentPoly", "Poly", "Form", "PSeq", "SymP",
    "affine_act", "canonical", "classify", "make_pseq", "RationalFactored", "solve_feq",
    "solve_rho", "QContext",
]
