from .bernoulli import bernoulli_numbers, bernoulli_numbers_by_recurrence
from .context import (
    PrecisionContext,
    agreement_digits,
    bits_to_digits,
    decimal_exponent,
    digits_to_bits,
    format_complex,
    format_real,
    is_complex,
    make_context,
    parse_number,
    parse_real,
    to_mp,
)

__all__ = [
    'PrecisionContext',
    'make_context',
    'digits_to_bits',
    'bits_to_digits',
    'to_mp',
    'parse_number',
    'format_real',
    'format_complex',
    'parse_real',
    'agreement_digits',
    'is_complex',
    'decimal_exponent',
    'bernoulli_numbers',
    'bernoulli_numbers_by_recurrence',
]
