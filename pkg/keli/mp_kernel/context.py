"""Precision contexts, conversions and the decimal serialization format.

Precision is always stated in decimal digits. Each ``PrecisionContext`` hands
out private mpmath contexts, so no module ever touches ``mpmath.mp``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from mpmath import libmp
from mpmath.ctx_mp import MPContext

from ..common.errors import PrecisionError

MIN_WORKING_DIGITS = 30
MIN_GUARD_DIGITS = 10
BIT_SLACK = 8

# Only used for magnitudes (log10 of ratios); never for pipeline values.
_LOW = MPContext()
_LOW.prec = 64


def digits_to_bits(digits: int) -> int:
    return math.ceil(digits * math.log2(10)) + BIT_SLACK


def bits_to_digits(bits: int) -> int:
    """Decimal digits needed to reproduce a ``bits``-bit mantissa exactly."""
    return math.ceil(bits * math.log10(2)) + 1


@dataclass(frozen=True)
class PrecisionContext:
    working_digits: int
    guard_digits: int
    rounding: str = 'nearest'

    def __post_init__(self):
        if self.working_digits < MIN_WORKING_DIGITS:
            raise PrecisionError(
                f'working_digits must be >= {MIN_WORKING_DIGITS}, got {self.working_digits}')
        if self.guard_digits < MIN_GUARD_DIGITS:
            raise PrecisionError(
                f'guard_digits must be >= {MIN_GUARD_DIGITS}, got {self.guard_digits}')
        if self.rounding != 'nearest':
            raise PrecisionError(f'unsupported rounding mode: {self.rounding}')

    @property
    def internal_digits(self) -> int:
        return self.working_digits + self.guard_digits

    @property
    def working_bits(self) -> int:
        return digits_to_bits(self.working_digits)

    @property
    def internal_bits(self) -> int:
        return digits_to_bits(self.internal_digits)

    def mp(self, extra_digits: int = 0) -> MPContext:
        """Fresh mpmath context at internal precision plus ``extra_digits``."""
        ctx = MPContext()
        ctx.prec = digits_to_bits(self.internal_digits + extra_digits)
        return ctx

    def working_mp(self) -> MPContext:
        ctx = MPContext()
        ctx.prec = self.working_bits
        return ctx

    def report(self, value):
        """Round an internal value to working precision for the caller."""
        return to_mp(self.working_mp(), value)

    def elevated(self, extra_digits: int) -> 'PrecisionContext':
        return make_context(self.working_digits + extra_digits)


def make_context(working_digits: int) -> PrecisionContext:
    if not isinstance(working_digits, int) or working_digits < MIN_WORKING_DIGITS:
        raise PrecisionError(
            f'working_digits must be an integer >= {MIN_WORKING_DIGITS}, got {working_digits!r}')
    return PrecisionContext(working_digits, max(MIN_GUARD_DIGITS, working_digits // 20))


def is_complex(value) -> bool:
    return hasattr(value, '_mpc_') or isinstance(value, complex)


def to_mp(ctx: MPContext, value):
    """Convert ints, Fractions, strings and mpmath values of any context into ``ctx``.

    The result is rounded to nearest at the current precision of ``ctx``.
    """
    if isinstance(value, Fraction):
        raw = libmp.from_rational(value.numerator, value.denominator, ctx.prec, libmp.round_nearest)
        return ctx.make_mpf(raw)
    if hasattr(value, '_mpf_'):
        return +ctx.mpf(value)
    if hasattr(value, '_mpc_') or isinstance(value, complex):
        return ctx.mpc(to_mp(ctx, value.real), to_mp(ctx, value.imag))
    if isinstance(value, str):
        return parse_number(ctx, value)
    return +ctx.mpmathify(value)


_COMPLEX_TEXT = re.compile(r'^\s*([+-]?[^+-]*(?:[eE][+-]?\d+)?)([+-][^+-]*(?:[eE][+-]?\d+)?)[ij]\s*$')


def parse_number(ctx: MPContext, text: str):
    """Parse ``a``, ``a+bi`` or ``a-bj`` (scientific notation allowed) into ``ctx``."""
    text = text.strip()
    match = _COMPLEX_TEXT.match(text)
    if match and match.group(1).strip():
        return ctx.mpc(ctx.mpf(match.group(1)), ctx.mpf(match.group(2)))
    if text.endswith(('i', 'j')):
        imag = text[:-1] or '1'
        return ctx.mpc(0, ctx.mpf(imag if imag not in '+-' else imag + '1'))
    return ctx.mpf(text)


def format_real(value, bits: int | None = None) -> str:
    """Scientific notation, full mantissa, lowercase exponent: ``-5.7750712...e-3``."""
    if bits is None:
        bits = value.context.prec
    raw = value._mpf_ if hasattr(value, '_mpf_') else libmp.from_str(str(value), bits, libmp.round_nearest)
    return libmp.to_str(raw, bits_to_digits(bits), strip_zeros=False,
                        min_fixed=0, max_fixed=0, show_zero_exponent=True)


def parse_real(text: str, bits: int):
    """Parse a serialized real into a fresh context of ``bits`` bits."""
    ctx = MPContext()
    ctx.prec = bits
    return ctx.mpf(text.strip())


def format_complex(value, bits: int | None = None) -> str:
    re_text = format_real(value.real, bits)
    im_text = format_real(value.imag, bits)
    sign = '' if im_text.startswith('-') else '+'
    return f'{re_text}{sign}{im_text}i'


def agreement_digits(a, b, cap: float = math.inf) -> float:
    """Number of leading decimal digits on which ``a`` and ``b`` agree."""
    scale = max(_LOW.mpf(abs(a)), _LOW.mpf(abs(b)))
    diff = abs(a - b)
    if diff == 0:
        return cap
    if scale == 0:
        return 0.0
    return min(cap, max(0.0, float(-_LOW.log10(_LOW.mpf(diff) / scale))))


def decimal_exponent(value) -> int:
    """floor(log10|value|), or a large negative number for zero."""
    magnitude = _LOW.mpf(abs(value))
    if magnitude == 0:
        return -(10 ** 9)
    return int(_LOW.floor(_LOW.log10(magnitude)))
