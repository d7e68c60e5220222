"""Interpolation coefficients alpha_k and the interpolant F_m."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from ..combinatorics import CMatrix, omega_values
from ..common.errors import InsufficientPrecisionError
from ..mp_kernel import PrecisionContext, agreement_digits, digits_to_bits, make_context, to_mp
from ..node_pipeline import NodeValueTable

logger = logging.getLogger(__name__)

SHADOW_GAP = 50
MIN_ALPHA1_SIGNIFICANCE = 10
LOSS_PER_K = 6


def required_node_digits(k_max: int, target_digits: int = 20) -> int:
    """Node precision needed for k_max usable coefficients (about six digits lost per k)."""
    return LOSS_PER_K * k_max + target_digits + 100


def shadow_digits(digits: int) -> int:
    return digits - min(SHADOW_GAP, digits // 2)


def significance_from_shadow(full, shadow, offset: float, cap: float) -> float:
    """Digits of ``full`` implied by its agreement with a run ``offset`` digits poorer."""
    agree = agreement_digits(full, shadow, cap=cap)
    if agree < 1:
        return 0.0
    return min(cap, agree + offset)


@dataclass(frozen=True)
class AlphaSeries:
    """alpha_k, k = 1..k_max, with per-entry significance in decimal digits.

    ``shadow`` holds the same coefficients computed from node values rounded
    ``shadow_offset`` digits lower; downstream quantities use it for their own
    dual-run significance.
    """
    values: tuple
    shadow: tuple
    significant_digits: tuple
    source_digits: int
    shadow_offset: int

    def __post_init__(self):
        if not (len(self.values) == len(self.shadow) == len(self.significant_digits)):
            raise ValueError('alpha series fields have different lengths')
        for prev, cur in zip(self.significant_digits, self.significant_digits[1:]):
            if cur > prev:
                raise ValueError('significant_digits must be nonincreasing')

    @property
    def k_max(self) -> int:
        return len(self.values)

    def alpha(self, k: int):
        return self.values[k - 1]

    def significance(self, k: int) -> float:
        return self.significant_digits[k - 1]

    def head(self, k_max: int) -> 'AlphaSeries':
        k_max = min(k_max, self.k_max)
        return AlphaSeries(self.values[:k_max], self.shadow[:k_max], self.significant_digits[:k_max],
                           self.source_digits, self.shadow_offset)

    def significance_at(self, full, shadow, cap: float | None = None) -> float:
        """Significance of a quantity computed once from ``values`` and once from ``shadow``."""
        cap = self.source_digits if cap is None else min(cap, self.source_digits)
        return significance_from_shadow(full, shadow, self.shadow_offset, cap)

    def sign_pattern_holds(self) -> bool:
        """(-1)^(k+1) alpha_k > 0 for every stored k."""
        return all((v > 0) == (k % 2 == 1) for k, v in enumerate(self.values, start=1))


def _combine(mp, cmat: CMatrix, values: list, k_max: int) -> list:
    out = []
    for k in range(1, k_max + 1):
        total = mp.zero
        for j, c in enumerate(cmat.row(k), start=1):
            total += to_mp(mp, c) * values[j - 1]
        out.append(total)
    return out


def solve_alphas(table: NodeValueTable, cmat: CMatrix, ctx: PrecisionContext | None = None,
                 k_max: int | None = None) -> AlphaSeries:
    """alpha_k = sum_{j<=k} c_kj f(j/(j+1)), truncated where significance runs out.

    Args:
        table: node values
        cmat: exact c-matrix
        ctx: precision of the run; defaults to the table's own digits
        k_max: optional cap below cmat.k_max

    Raises:
        InsufficientPrecisionError: table too short or too coarse, or alpha_1 below 10 digits
    """
    ctx = ctx or make_context(table.digits)
    k_max = min(k_max or cmat.k_max, cmat.k_max)
    if table.count < k_max:
        raise InsufficientPrecisionError(f'node table has {table.count} entries, k_max={k_max} needs {k_max}')
    if table.digits < ctx.working_digits:
        raise InsufficientPrecisionError(
            f'node table has {table.digits} digits, run needs {ctx.working_digits}')
    if table.digits < required_node_digits(k_max):
        logger.warning('%d-digit nodes are below the %d digits needed for k_max=%d; expect truncation',
                       table.digits, required_node_digits(k_max), k_max)

    mp = ctx.mp()
    digits = ctx.working_digits
    full_nodes = [to_mp(mp, table.value(j)) for j in range(1, k_max + 1)]

    shadow_mp = ctx.mp()
    shadow_mp.prec = digits_to_bits(shadow_digits(digits))
    shadow_nodes = [to_mp(mp, to_mp(shadow_mp, v)) for v in full_nodes]
    offset = digits - shadow_digits(digits)

    full = _combine(mp, cmat, full_nodes, k_max)
    shadow = _combine(mp, cmat, shadow_nodes, k_max)

    significance = []
    running = float(digits)
    for a, b in zip(full, shadow):
        running = min(running, significance_from_shadow(a, b, offset, digits))
        if running <= 0:
            break
        significance.append(running)

    kept = len(significance)
    if kept == 0 or significance[0] < MIN_ALPHA1_SIGNIFICANCE:
        raise InsufficientPrecisionError(
            f'alpha_1 has {significance[0] if significance else 0:.1f} significant digits '
            f'(need {MIN_ALPHA1_SIGNIFICANCE}); raise the node precision')
    if kept < k_max:
        logger.warning('alpha series truncated at k=%d of %d (significance exhausted)', kept, k_max)

    series = AlphaSeries(tuple(full[:kept]), tuple(shadow[:kept]), tuple(significance),
                         table.digits, offset)
    if not series.sign_pattern_holds():
        logger.warning('alpha sign pattern (-1)^(k+1) alpha_k > 0 violated within k <= %d', kept)
    return series


def interpolant_eval(alphas: AlphaSeries, m: int, s):
    """F_m(s) = sum_{k<=m} (-1)^k alpha_k omega_k(s)."""
    if not 1 <= m <= alphas.k_max:
        raise ValueError(f'm must be in 1..{alphas.k_max}, got {m}')
    mp = alphas.values[0].context
    omegas = omega_values(m, to_mp(mp, s))
    total = mp.zero
    for k, (alpha, omega) in enumerate(zip(alphas.values, omegas), start=1):
        term = alpha * omega
        total = total - term if k % 2 else total + term
    return total

