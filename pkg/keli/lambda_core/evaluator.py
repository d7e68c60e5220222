"""lambda(s) as an entire even function: the beta-polynomial route and the nu power series."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_mp import MPContext

from ..combinatorics import beta_table, chi_table
from ..common.errors import InsufficientPrecisionError, InsufficientTruncationError
from ..mp_kernel import PrecisionContext, decimal_exponent, digits_to_bits, make_context, to_mp
from ..special_functions import euler_gamma_checked
from .alphas import AlphaSeries
from .nu import NuSeries, nu_coeffs

logger = logging.getLogger(__name__)

PROFILE_DIGITS = 30
EVAL_GUARD_DIGITS = 10
TRUNCATION_MARGIN = 5
SMALL_RUN = 3
DEFAULT_TARGET_DIGITS = 20


@dataclass(frozen=True)
class LambdaResult:
    value: object
    derivative: object
    significance: float | None
    terms: int
    max_term_exponent: int
    eval_digits: int


def _context(digits: int) -> MPContext:
    mp = MPContext()
    mp.prec = digits_to_bits(digits)
    return mp


def _beta_value(coefficients, w):
    """beta(s) with w = s^2: w * sum_t c_t w^t."""
    acc = 0
    for c in reversed(coefficients):
        acc = acc * w + c
    return acc * w


def _beta_value_and_derivative(coefficients, s, w):
    """(beta(s), beta'(s)); beta' = 2s (Q(w) + w Q'(w)) with beta = w Q(w)."""
    q = 0
    dq = 0
    for c in reversed(coefficients):
        dq = dq * w + q
        q = q * w + c
    return q * w, 2 * s * (q + w * dq)


def _truncation_index(magnitudes, threshold_digits: int) -> int | None:
    """Index after which SMALL_RUN consecutive terms fall below 10^-threshold of the running max."""
    scale = 10 ** threshold_digits
    running = 0
    small = 0
    for index, size in enumerate(magnitudes, start=1):
        running = max(running, size)
        if size * scale <= running:
            small += 1
            if small >= SMALL_RUN:
                return index
        else:
            small = 0
    return None


class LambdaEvaluator:
    """Evaluates lambda(s) from an alpha series.

    Attributes:
        alphas: coefficient series (with its shadow run)
        betas: beta polynomials for k = 1..alphas.k_max
        nus: Taylor coefficients, the cross-check route
        ctx: precision of the node data
        target_digits: default accuracy goal for evaluations
    """

    def __init__(self, alphas: AlphaSeries, betas, nus: NuSeries, ctx: PrecisionContext,
                 target_digits: int = DEFAULT_TARGET_DIGITS):
        if len(betas) < alphas.k_max:
            raise ValueError(f'{len(betas)} beta polynomials for {alphas.k_max} coefficients')
        self.alphas: AlphaSeries = alphas
        self.betas: tuple = tuple(betas[:alphas.k_max])
        self.nus: NuSeries = nus
        self.ctx: PrecisionContext = ctx
        self.target_digits: int = target_digits
        self._converted: dict = {}

    @classmethod
    def build(cls, alphas: AlphaSeries, q_max: int = 40, target_digits: int = DEFAULT_TARGET_DIGITS,
              ctx: PrecisionContext | None = None) -> 'LambdaEvaluator':
        nus = nu_coeffs(alphas, chi_table(alphas.k_max), q_max)
        return cls(alphas, beta_table(alphas.k_max), nus, ctx or make_context(alphas.source_digits),
                   target_digits)

    @property
    def k_max(self) -> int:
        return self.alphas.k_max

    def _data(self, mp: MPContext) -> tuple:
        """Beta coefficients, alphas and shadow alphas rounded into ``mp`` (cached per precision)."""
        key = mp.prec
        if key not in self._converted:
            coefficients = [tuple(to_mp(mp, c) for c in beta.coefficients) for beta in self.betas]
            alphas = [to_mp(mp, a) for a in self.alphas.values]
            shadow = [to_mp(mp, a) for a in self.alphas.shadow]
            nus = [to_mp(mp, v) for v in self.nus.values]
            majorants = [tuple(abs(c) for c in coeffs) for coeffs in coefficients]
            self._converted[key] = (coefficients, alphas, shadow, nus, majorants)
        return self._converted[key]

    def _profile(self, s, target: int, derivative: bool = False) -> tuple:
        """Number of terms needed and the decimal exponent of the largest one.

        The exponent comes from the majorant sum_t |c_t| |s|^(2t+2) of each
        beta_k so that cancellation inside beta_k(s) is paid for as well.
        """
        mp = _context(PROFILE_DIGITS)
        coefficients, alphas, _, _, majorants = self._data(mp)
        s = to_mp(mp, s)
        w = s * s
        radius = abs(s)
        sizes, dsizes, bounds, dbounds = [], [], [], []
        for coeffs, bound_coeffs, alpha in zip(coefficients, majorants, alphas):
            if derivative:
                beta, dbeta = _beta_value_and_derivative(coeffs, s, w)
                dsizes.append(abs(dbeta * alpha))
                bound, dbound = _beta_value_and_derivative(bound_coeffs, radius, radius * radius)
                dbounds.append(abs(dbound * alpha))
            else:
                beta = _beta_value(coeffs, w)
                bound = _beta_value(bound_coeffs, radius * radius)
            sizes.append(abs(beta * alpha))
            bounds.append(abs(bound * alpha))

        needed = _truncation_index(sizes, target + TRUNCATION_MARGIN)
        if derivative and needed is not None:
            dneeded = _truncation_index(dsizes, target + TRUNCATION_MARGIN)
            needed = None if dneeded is None else max(needed, dneeded)
        if needed is None:
            raise InsufficientTruncationError(
                f'|s| = {mp.nstr(abs(s), 8)} needs more than k_max = {self.k_max} coefficients '
                f'for {target} digits (reliable radius {self.reliable_radius(target):.4g})')
        biggest = max(sizes + dsizes + bounds[:needed] + dbounds[:needed])
        return needed, decimal_exponent(biggest) if biggest else 0

    def evaluate(self, s, target_digits: int | None = None, derivative: bool = False,
                 significance: bool = False) -> LambdaResult:
        """lambda(s) = sum_k beta_k(s) alpha_k, summed in ascending k.

        Precision is raised by the decimal exponent of the largest term so the
        cancellation between terms does not eat into the target.
        """
        target = target_digits or self.target_digits
        needed, e_max = self._profile(s, target, derivative)
        digits = target + EVAL_GUARD_DIGITS + max(0, e_max)
        mp = _context(digits)
        coefficients, alphas, shadow_alphas, _, _ = self._data(mp)
        s = to_mp(mp, s)
        w = s * s

        value = mp.zero
        slope = mp.zero
        shadow = mp.zero
        for k in range(needed):
            if derivative:
                beta, dbeta = _beta_value_and_derivative(coefficients[k], s, w)
                slope += dbeta * alphas[k]
            else:
                beta = _beta_value(coefficients[k], w)
            value += beta * alphas[k]
            if significance:
                shadow += beta * shadow_alphas[k]

        sig = None
        if significance:
            lost = max(0, e_max - decimal_exponent(value)) if value != 0 else 0
            sig = self.alphas.significance_at(value, shadow, cap=digits - lost)
            if sig <= 0:
                raise InsufficientPrecisionError(f'lambda({mp.nstr(s, 10)}) has no significant digits')
        return LambdaResult(value, slope if derivative else None, sig, needed, e_max, digits)

    def evaluate_int(self, n: int, target_digits: int | None = None, significance: bool = False) -> LambdaResult:
        """lambda_n with exact rational beta_k(n)."""
        if n < 1:
            raise ValueError(f'n must be >= 1, got {n}')
        target = target_digits or self.target_digits
        needed, e_max = self._profile(n, target)
        digits = target + EVAL_GUARD_DIGITS + max(0, e_max)
        mp = _context(digits)
        _, alphas, shadow_alphas, _, _ = self._data(mp)
        total = mp.zero
        shadow = mp.zero
        for k in range(needed):
            beta = to_mp(mp, self.betas[k](Fraction(n)))
            total += beta * alphas[k]
            shadow += beta * shadow_alphas[k]
        sig = None
        if significance:
            lost = max(0, e_max - decimal_exponent(total))
            sig = self.alphas.significance_at(total, shadow, cap=digits - lost)
        return LambdaResult(total, None, sig, needed, e_max, digits)

    def lambda_series(self, s, target_digits: int | None = None):
        """sum_q nu_{2q} s^{2q}, the cross-check route."""
        target = target_digits or self.target_digits
        low = _context(PROFILE_DIGITS)
        _, _, _, nus_low, _ = self._data(low)
        s_low = to_mp(low, s)
        w_low = s_low * s_low
        sizes, power = [], low.one
        for nu in nus_low:
            power *= w_low
            sizes.append(abs(nu * power))
        needed = _truncation_index(sizes, target + TRUNCATION_MARGIN)
        if needed is None:
            raise InsufficientTruncationError(
                f'nu series to q={self.nus.q_max} is too short at |s| = {low.nstr(abs(s_low), 8)}')
        biggest = max(sizes)
        e_max = decimal_exponent(biggest) if biggest else 0

        mp = _context(target + EVAL_GUARD_DIGITS + max(0, e_max))
        _, _, _, nus, _ = self._data(mp)
        s = to_mp(mp, s)
        w = s * s
        total, power = mp.zero, mp.one
        for nu in nus[:needed]:
            power *= w
            total += nu * power
        return total

    def _radius_ok(self, radius: float, target: int) -> bool:
        mp = _context(PROFILE_DIGITS)
        _, alphas, _, _, majorants = self._data(mp)
        w = mp.mpf(radius) ** 2
        sizes = [abs(_beta_value(c, w) * a) for c, a in zip(majorants, alphas)]
        return _truncation_index(sizes, target + TRUNCATION_MARGIN) is not None

    def reliable_radius(self, target_digits: int | None = None) -> float:
        """Largest |s| the coefficients cover at the target accuracy.

        |beta_k(s)| <= sum_t |c_t| |s|^(2t+2), so the truncation test is run on
        that majorant at s = radius and holds on the whole disk.
        """
        target = target_digits or self.target_digits
        low, high = 0.0, 1.0
        while self._radius_ok(high, target):
            low, high = high, 2 * high
            if high > 16 * self.k_max:
                return low
        for _ in range(30):
            mid = (low + high) / 2
            if self._radius_ok(mid, target):
                low = mid
            else:
                high = mid
        return low


def lambda_at(s, ev: LambdaEvaluator):
    return ev.evaluate(s).value


def lambda_prime(s, ev: LambdaEvaluator):
    return ev.evaluate(s, derivative=True).derivative


def lambda_int(n: int, ev: LambdaEvaluator):
    return ev.evaluate_int(n).value


def lambda_at_series(s, ev: LambdaEvaluator):
    return ev.lambda_series(s)


def lambda1_closed(ctx: PrecisionContext):
    """lambda_1 = (2 + gamma - ln 4 pi) / 2."""
    mp = ctx.mp()
    gamma = to_mp(mp, euler_gamma_checked(ctx))
    return (2 + gamma - mp.log(4 * mp.pi)) / 2

