from fractions import Fraction

import numpy as np
import pytest

from keli.common.errors import BranchCutError, ParameterValidationError, PoleError
from keli.mp_kernel import agreement_digits, make_context
from keli.special_functions import (
    EulerMaclaurinParams,
    euler_gamma,
    euler_gamma_checked,
    log_gamma,
    xi_log,
    zeta_em,
    zeta_product,
)

DIGITS = 100
TOLERANCE = '1e-95'

ZETA_HALF = '-1.4603545088095868128894991525152980125'
XI_LOG_HALF = '-0.00577508738538610588'


@pytest.fixture(scope='module')
def ctx():
    return make_context(DIGITS)


@pytest.fixture(scope='module')
def mp(ctx):
    return ctx.mp()


class TestZeta:
    def test_known_values(self, ctx, mp):
        tol = mp.mpf(TOLERANCE)
        assert abs(zeta_em(2, ctx) - mp.pi ** 2 / 6) < tol
        assert abs(zeta_em(4, ctx) - mp.pi ** 4 / 90) < tol
        assert abs(zeta_em(0, ctx) + mp.mpf(1) / 2) < tol

    def test_half(self, ctx, mp):
        assert agreement_digits(zeta_em(Fraction(1, 2), ctx), mp.mpf(ZETA_HALF)) > 35

    def test_complex_point(self, ctx, mp):
        value = zeta_em(mp.mpc(2, 3), ctx)
        conjugate = zeta_em(mp.mpc(2, -3), ctx)
        assert abs(value.conjugate() - conjugate) < mp.mpf(TOLERANCE)

    def test_pole(self, ctx):
        with pytest.raises(PoleError):
            zeta_em(1, ctx)

    def test_parameters(self, mp):
        params = EulerMaclaurinParams.for_point(mp.mpf(2), 100)
        assert params == EulerMaclaurinParams(70, 70)
        assert EulerMaclaurinParams.for_point(mp.mpc(2, 20), 100).cutoff_N == 80
        assert params.widened() == EulerMaclaurinParams(78, 74)
        with pytest.raises(ValueError):
            EulerMaclaurinParams(0, 5)

    def test_widened_run_agrees(self, ctx, mp):
        s = mp.mpc('0.3', '0.2')
        params = EulerMaclaurinParams.for_point(s, ctx.internal_digits)
        first = zeta_em(s, ctx, params, validate=False)
        second = zeta_em(s, ctx, params.widened(), validate=False)
        assert agreement_digits(first, second) >= DIGITS

    def test_too_few_terms_fail_validation(self, ctx):
        with pytest.raises(ParameterValidationError):
            zeta_em(2, ctx, EulerMaclaurinParams(1, 1))


class TestLogGamma:
    def test_known_values(self, ctx, mp):
        tol = mp.mpf(TOLERANCE)
        assert abs(log_gamma(1, ctx)) < tol
        assert abs(log_gamma(2, ctx)) < tol
        assert abs(log_gamma(Fraction(1, 2), ctx) - mp.log(mp.pi) / 2) < tol

    def test_recurrence(self, ctx, mp):
        s = Fraction(37, 10)
        difference = log_gamma(s + 1, ctx) - log_gamma(s, ctx) - mp.log(mp.mpf(37) / 10)
        assert abs(difference) < mp.mpf(TOLERANCE)

    def test_complex_recurrence(self, ctx, mp):
        s = mp.mpc('0.25', '3')
        difference = log_gamma(s + 1, ctx) - log_gamma(s, ctx) - mp.log(s)
        assert abs(difference) < mp.mpf(TOLERANCE)

    @pytest.mark.parametrize('pole', [0, -1, -7])
    def test_poles(self, ctx, pole):
        with pytest.raises(PoleError):
            log_gamma(pole, ctx)


class TestEulerGamma:
    def test_methods_agree_with_constant(self, ctx, mp):
        tol = mp.mpf(TOLERANCE)
        assert abs(euler_gamma(ctx, 'brent-mcmillan') - mp.euler) < tol
        assert abs(euler_gamma(ctx, 'euler-maclaurin') - mp.euler) < tol
        assert abs(euler_gamma_checked(ctx) - mp.euler) < tol

    def test_unknown_method(self, ctx):
        with pytest.raises(ValueError):
            euler_gamma(ctx, 'guess')


class TestXiLog:
    def test_normalization(self, ctx, mp):
        tol = mp.mpf(TOLERANCE)
        assert abs(xi_log(1, ctx)) < tol
        assert abs(xi_log(0, ctx)) < tol
        assert zeta_product(1, ctx) == 1

    def test_half(self, ctx, mp):
        value = xi_log(Fraction(1, 2), ctx)
        assert value < 0
        assert abs(value - mp.mpf(XI_LOG_HALF)) < mp.mpf('1e-19')
        half = mp.mpf(1) / 2
        closed = mp.ln2 - mp.log(mp.pi) / 4 + mp.loggamma(mp.mpf(5) / 4) + mp.log(-mp.zeta(half) / 2)
        assert abs(value - closed) < mp.mpf(TOLERANCE)

    def test_real_on_unit_interval(self, ctx):
        value = xi_log(Fraction(3, 10), ctx)
        assert hasattr(value, '_mpf_')

    def test_symmetry(self, ctx, mp):
        assert abs(xi_log(Fraction(3, 10), ctx) - xi_log(Fraction(7, 10), ctx)) < mp.mpf(TOLERANCE)

    @pytest.mark.slow
    def test_symmetry_random_points(self, ctx, mp):
        rng = np.random.default_rng(20240601)
        tol = mp.mpf(TOLERANCE)
        for x in rng.uniform(0.01, 0.99, size=100):
            s = Fraction(float(x))
            assert abs(xi_log(s, ctx) - xi_log(1 - s, ctx)) < tol

    def test_complex_symmetry(self, ctx, mp):
        s = mp.mpc('0.3', '0.4')
        assert abs(xi_log(s, ctx) - xi_log(1 - s, ctx)) < mp.mpf(TOLERANCE)

    def test_branch_cut(self, ctx):
        # (s - 1) zeta(s) = -4/120 at s = -3
        with pytest.raises(BranchCutError):
            xi_log(-3, ctx)
