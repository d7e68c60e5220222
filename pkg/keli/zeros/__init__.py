from .newton import certify_zero, check_mirror_symmetry, find_zeros, refine_zero, seed_zero
from .product import linear_factors, product_partial, quartic_factor
from .verify import RELATIVE_THRESHOLD, VerificationReport, ZeroComparison, verify_against_fixture
from .zero_table import (
    FIXTURE_FILE,
    ComplexZero,
    ZeroTable,
    load_fixture,
    read_zero_table,
    write_zero_table,
)

__all__ = [
    'ComplexZero',
    'ZeroTable',
    'FIXTURE_FILE',
    'load_fixture',
    'read_zero_table',
    'write_zero_table',
    'seed_zero',
    'refine_zero',
    'certify_zero',
    'check_mirror_symmetry',
    'find_zeros',
    'quartic_factor',
    'linear_factors',
    'product_partial',
    'verify_against_fixture',
    'VerificationReport',
    'ZeroComparison',
    'RELATIVE_THRESHOLD',
]
