"""f(s) = ln xi(s) with xi normalised so that xi(0) = xi(1) = 1."""
from __future__ import annotations

from ..common.errors import BranchCutError
from ..mp_kernel import PrecisionContext, to_mp
from .gamma import log_gamma
from .zeta import zeta_em


def zeta_product(s, ctx: PrecisionContext):
    """(s - 1) * zeta(s), continued to 1 at s = 1."""
    mp = ctx.mp()
    s = to_mp(mp, s)
    if s == 1:
        return mp.one
    return (s - 1) * zeta_em(s, ctx)


def xi_log(s, ctx: PrecisionContext):
    """f(s) = ln 2 - (s/2) ln pi + ln Gamma(1 + s/2) + Log((s - 1) zeta(s)).

    Real input stays in real arithmetic, so the result on (0, 1) has no
    imaginary part at all.

    Raises:
        BranchCutError: if (s - 1) zeta(s) lies on the closed negative real axis
    """
    mp = ctx.mp()
    s = to_mp(mp, s)
    product = zeta_product(s, ctx)
    if product.imag == 0 and product.real <= 0:
        raise BranchCutError(
            f'(s-1)zeta(s) = {mp.nstr(product, 10)} at s = {mp.nstr(s, 15)} is on the branch cut; '
            'use the contour-unwrapped evaluation')
    return mp.ln2 - s / 2 * mp.log(mp.pi) + log_gamma(1 + s / 2, ctx) + mp.log(product)
