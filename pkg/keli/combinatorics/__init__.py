from .beta import (
    BetaPolynomial,
    ChiRow,
    beta_direct,
    beta_poly,
    beta_table,
    binomial_poly,
    chi_coeffs,
    chi_coeffs_literal,
    chi_table,
)
from .c_matrix import CMatrix, c_coeff, c_matrix, verify_c_matrix
from .export import dump_exact, exact_payload
from .omega import invert_lower_triangular, omega_eval, omega_expanded, omega_system, omega_values
from .stirling import StirlingTriangle, stirling_triangle

__all__ = [
    'StirlingTriangle',
    'stirling_triangle',
    'CMatrix',
    'c_coeff',
    'c_matrix',
    'verify_c_matrix',
    'ChiRow',
    'chi_coeffs',
    'chi_coeffs_literal',
    'chi_table',
    'BetaPolynomial',
    'beta_poly',
    'beta_direct',
    'beta_table',
    'binomial_poly',
    'omega_eval',
    'omega_values',
    'omega_expanded',
    'omega_system',
    'invert_lower_triangular',
    'dump_exact',
    'exact_payload',
]
