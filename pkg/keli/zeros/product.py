"""lambda(s) as a product over its zeros, one quartic factor per family +-sigma, +-conj(sigma)."""
from __future__ import annotations

from ..mp_kernel import make_context, to_mp
from .zero_table import ComplexZero, ZeroTable

PRODUCT_DIGITS = 30


def quartic_factor(s, zero: ComplexZero):
    """1 + (s^4 - 2 s^2 (x^2 - y^2)) / |sigma|^4 for sigma = x + iy."""
    mp = s.context
    x, y = to_mp(mp, zero.re), to_mp(mp, zero.im)
    w = s * s
    modulus4 = (x * x + y * y) ** 2
    return 1 + (w * w - 2 * w * (x * x - y * y)) / modulus4


def linear_factors(s, zero: ComplexZero):
    """(1 - s/sigma)(1 + s/sigma)(1 - s/conj sigma)(1 + s/conj sigma), the ungrouped form."""
    mp = s.context
    sigma = mp.mpc(to_mp(mp, zero.re), to_mp(mp, zero.im))
    total = mp.one
    for root in (sigma, -sigma, sigma.conjugate(), -sigma.conjugate()):
        total *= 1 - s / root
    return total


def product_partial(s, table: ZeroTable, count: int, const, digits: int = PRODUCT_DIGITS):
    """const s^2 prod_{k <= count} quartic_factor(s, sigma_k)."""
    if not 0 <= count <= len(table):
        raise ValueError(f'count must be in 0..{len(table)}, got {count}')
    mp = make_context(digits).mp()
    s = to_mp(mp, s)
    total = to_mp(mp, const) * s * s
    for zero in table.zeros[:count]:
        total *= quartic_factor(s, zero)
    return total
