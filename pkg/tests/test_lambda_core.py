from fractions import Fraction

import numpy as np
import pytest

from keli.analysis import load_zeta_zeros
from keli.combinatorics import c_matrix, chi_table
from keli.common.errors import InsufficientPrecisionError, InsufficientTruncationError
from keli.lambda_core import (
    AlphaSeries,
    alpha_table,
    interpolant_eval,
    lambda1_closed,
    lambda_at,
    lambda_at_series,
    lambda_cauchy_oracle,
    lambda_int,
    lambda_prime,
    lambda_sum_zeros,
    lambda_table,
    nu_coeffs,
    nu_table,
    oracle_table,
    required_node_digits,
    shadow_digits,
    solve_alphas,
)
from keli.mp_kernel import agreement_digits, make_context
from keli.special_functions import xi_log

# printed nu_q, q = 2..40
NU_TABLE = {
    2: '0.02309880228342410477676',
    4: '-3.09371683415265473898551e-6',
    6: '3.99563862364130457659708e-10',
    8: '-3.27824357039932711305067e-14',
    10: '1.76392629840597191777657e-18',
    12: '-6.59627891032903838271624e-23',
    14: '1.80261444818246697993196e-27',
    16: '-3.74736154391950164309719e-32',
    18: '6.11810655404482213334562e-37',
    20: '-8.04817820960504164857545e-42',
    22: '8.71024161173990434824121e-47',
    24: '-7.89068457371063872283140e-52',
    26: '6.07081114243696016469182e-57',
    28: '-4.01587422754198410193234e-62',
    30: '2.30844971213622297522396e-67',
    32: '-1.16377839639253155696203e-72',
    34: '5.18728213721269917981043e-78',
    36: '-2.05888534722165928961667e-83',
    38: '7.32335119718293754341258e-89',
    40: '-2.34773116294318251393756e-94',
}
NU_2 = NU_TABLE[2]
NU_4 = NU_TABLE[4]
LAMBDA_1 = '0.023095708966121033814310247906'
CONST = '0.023098802283424104776762431610'
LAMBDA_HALF = '0.005774507219796948948'
LAMBDA_I = '-0.02310189639985490400'
LAMBDA_ONE_PLUS_I = ('0.00001237486681209165', '0.04619760137033736709')

ORACLE_DIGITS = 60


def _agree(value, text) -> float:
    return agreement_digits(value, value.context.mpf(text))


class TestRequiredDigits:
    def test_required_node_digits(self):
        assert required_node_digits(60) == 6 * 60 + 20 + 100
        assert required_node_digits(400, target_digits=30) == 2530

    def test_shadow_digits(self):
        assert shadow_digits(600) == 550
        assert shadow_digits(60) == 30


class TestAlphaSeriesShape:
    def test_significance_must_not_increase(self):
        ctx = make_context(30).mp()
        one = ctx.mpf(1)
        with pytest.raises(ValueError):
            AlphaSeries((one, one), (one, one), (10.0, 12.0), 30, 15)

    def test_coarse_nodes_rejected(self):
        from keli.node_pipeline import build_node_table
        table = build_node_table(2, make_context(30))
        with pytest.raises(InsufficientPrecisionError):
            solve_alphas(table, c_matrix(2), make_context(60))


@pytest.mark.slow
class TestAlphas:
    def test_first_coefficient(self, alphas, node_table):
        assert agreement_digits(alphas.alpha(1), -4 * node_table.value(1)) > 500
        assert abs(alphas.alpha(1) - alphas.alpha(1).context.mpf('0.0231003')) < 1e-7

    def test_full_range_kept(self, alphas):
        assert alphas.k_max == 60
        assert alphas.significance(1) > 500
        assert alphas.significance(60) > 0

    def test_sign_pattern(self, alphas):
        assert alphas.sign_pattern_holds()

    def test_significance_nonincreasing(self, alphas):
        digits = alphas.significant_digits
        assert all(b <= a for a, b in zip(digits, digits[1:]))

    def test_interpolant_at_zero(self, alphas):
        assert interpolant_eval(alphas, 10, 0) == 0

    def test_interpolant_hits_node(self, alphas, node_table):
        difference = interpolant_eval(alphas, 2, Fraction(2, 3)) - node_table.value(2)
        assert abs(difference) < difference.context.mpf(10) ** -400

    def test_interpolant_converges(self, alphas):
        s = Fraction(41, 100)
        target = xi_log(s, make_context(600))
        assert abs(interpolant_eval(alphas, 20, s) - target) < abs(interpolant_eval(alphas, 10, s) - target)

    def test_interpolant_order_range(self, alphas):
        with pytest.raises(ValueError):
            interpolant_eval(alphas, 61, Fraction(1, 2))

    def test_table(self, alphas):
        df = alpha_table(alphas)
        assert list(df.columns) == ['k', 'alpha_k', 'significance']
        assert len(df) == 60
        assert df['alpha_k'].iloc[0].startswith('2.31')


@pytest.mark.slow
class TestNu:
    def test_printed_values(self, evaluator):
        nus = evaluator.nus
        for q, printed in NU_TABLE.items():
            assert _agree(nus.nu(q), printed) >= 10, q

    def test_leading_constant(self, evaluator):
        assert _agree(evaluator.nus.nu(2), CONST) >= 10

    def test_odd_orders_vanish(self, evaluator):
        assert evaluator.nus.nu(3) == 0
        assert evaluator.nus.nu(41) == 0

    def test_alternating_signs(self, evaluator):
        assert evaluator.nus.alternates()
        assert evaluator.nus.q_max == 40

    def test_sum_is_lambda_1(self, evaluator):
        total = sum(evaluator.nus.values, evaluator.nus.values[0].context.zero)
        assert agreement_digits(total, lambda_int(1, evaluator)) >= 10

    def test_missing_chi_rows(self, alphas):
        with pytest.raises(ValueError):
            nu_coeffs(alphas, chi_table(5), 10)

    def test_bad_q_max(self, alphas):
        with pytest.raises(ValueError):
            nu_coeffs(alphas, chi_table(60), 7)

    def test_table(self, evaluator):
        df = nu_table(evaluator.nus)
        assert list(df['q']) == list(range(2, 41, 2))


@pytest.mark.slow
class TestLambda:
    def test_lambda_1_closed_form(self, evaluator):
        closed = lambda1_closed(make_context(60))
        assert _agree(closed, LAMBDA_1) >= 28
        assert agreement_digits(lambda_int(1, evaluator), closed) >= 10

    def test_printed_values(self, evaluator):
        assert _agree(lambda_at(Fraction(1, 2), evaluator), LAMBDA_HALF) >= 8
        assert _agree(lambda_at(complex(0, 1), evaluator), LAMBDA_I) >= 8
        value = lambda_at('1+1i', evaluator)
        mp = value.context
        expected = mp.mpc(mp.mpf(LAMBDA_ONE_PLUS_I[0]), mp.mpf(LAMBDA_ONE_PLUS_I[1]))
        assert agreement_digits(value, expected) >= 8
        assert agreement_digits(value.real, expected.real) >= 5

    def test_real_on_imaginary_axis(self, evaluator):
        assert lambda_at(complex(0, 3), evaluator).imag == 0

    def test_double_zero_at_origin(self, evaluator):
        assert lambda_at(0, evaluator) == 0
        assert lambda_prime(0, evaluator) == 0

    def test_even_and_mirror_symmetric(self, evaluator):
        s = complex(0.7, 1.3)
        value = lambda_at(s, evaluator)
        assert lambda_at(-s, evaluator) == value
        assert lambda_at(s.conjugate(), evaluator) == value.conjugate()

    @pytest.mark.parametrize('point', [1, complex(0.3, 0.2)])
    def test_derivative_against_central_difference(self, evaluator, point):
        h = 1e-10
        slope = lambda_prime(point, evaluator)
        upper = evaluator.evaluate(point + h, target_digits=40).value
        lower = evaluator.evaluate(point - h, target_digits=40).value
        estimate = (upper - lower) / (2 * h)
        assert agreement_digits(slope, estimate) >= 15

    def test_series_route_agrees(self, evaluator):
        for s in (Fraction(1, 2), complex(1, 1), complex(2, -0.5), 3):
            assert agreement_digits(lambda_at_series(s, evaluator), lambda_at(s, evaluator)) >= 12

    def test_routes_agree_on_disk_of_radius_20(self, evaluator):
        rng = np.random.default_rng(11)
        radius = 20 * np.sqrt(rng.random(100))
        angle = 2 * np.pi * rng.random(100)
        for r, phi in zip(radius, angle):
            s = complex(r * np.cos(phi), r * np.sin(phi))
            assert agreement_digits(lambda_at_series(s, evaluator), lambda_at(s, evaluator)) >= 12, s

    def test_positive_coefficients(self, evaluator):
        for n in range(1, 101):
            assert lambda_int(n, evaluator) > 0

    def test_significance_reported(self, evaluator):
        result = evaluator.evaluate(Fraction(1, 2), significance=True)
        assert result.significance >= 20
        assert result.terms <= 60

    def test_reliable_radius(self, evaluator):
        radius = evaluator.reliable_radius()
        assert radius > 150
        with pytest.raises(InsufficientTruncationError):
            evaluator.evaluate(4 * radius)

    def test_table(self, evaluator):
        df = lambda_table(evaluator, 5)
        assert list(df['n']) == [1, 2, 3, 4, 5]
        assert (df['significance'] >= 10).all()
        with pytest.raises(ValueError):
            lambda_table(evaluator, 0)


class TestTwentyCoefficients:
    def test_builds_past_negative_beta_coefficient(self, small_evaluator):
        assert small_evaluator.k_max == 20
        assert small_evaluator.betas[16].coefficients[0] < 0
        assert small_evaluator.nus.q_max == 40

    def test_printed_values(self, small_evaluator):
        assert _agree(lambda_at(Fraction(1, 2), small_evaluator), LAMBDA_HALF) >= 8
        assert _agree(small_evaluator.nus.nu(2), NU_2) >= 8

    def test_routes_agree(self, small_evaluator):
        for s in (Fraction(1, 2), complex(1, 1), complex(2, -0.5), 3):
            assert agreement_digits(lambda_at_series(s, small_evaluator), lambda_at(s, small_evaluator)) >= 12

    def test_radius_covers_unit_disk(self, small_evaluator):
        assert small_evaluator.reliable_radius() > 1
        assert lambda_prime(complex(0.3, 0.2), small_evaluator) != 0


class TestZeroSum:
    def test_empty_list(self):
        assert lambda_sum_zeros(1, []) == 0

    def test_on_line_terms_nonnegative(self):
        gammas = load_zeta_zeros(count=20)
        for n in (1, 2, 7, 50, 333):
            assert lambda_sum_zeros(n, gammas) >= 0

    def test_partial_sums_increase_below_lambda_1(self):
        gammas = load_zeta_zeros()
        closed = lambda1_closed(make_context(30))
        sums = [lambda_sum_zeros(1, gammas.head(count)) for count in (10, 50, 100)]
        assert sums[0] < sums[1] < sums[2] < closed

    def test_deviation_bounds(self):
        gammas = load_zeta_zeros(count=5)
        with pytest.raises(ValueError):
            lambda_sum_zeros(1, gammas, deviation=(1, 0.5))
        with pytest.raises(ValueError):
            lambda_sum_zeros(1, gammas, deviation=(6, 0.1))
        with pytest.raises(ValueError):
            lambda_sum_zeros(0, gammas)

    def test_zero_deviation_is_on_line(self):
        gammas = load_zeta_zeros(count=5)
        assert lambda_sum_zeros(3, gammas, deviation=(2, 0)) == lambda_sum_zeros(3, gammas)

    def test_deviation_drives_a_coefficient_negative(self):
        gammas = load_zeta_zeros(count=5)
        assert all(lambda_sum_zeros(n, gammas) >= 0 for n in (1, 100, 2500))
        assert any(lambda_sum_zeros(n, gammas, deviation=(1, 0.25)) < 0 for n in range(1, 5001))


class TestCauchyOracle:
    def test_lambda_1(self, oracle):
        assert _agree(oracle[0], LAMBDA_1) >= 15

    def test_radius_independence(self, oracle):
        halved = lambda_cauchy_oracle(10, '0.25', 256, make_context(ORACLE_DIGITS))
        for a, b in zip(oracle[:10], halved):
            assert agreement_digits(a, b) >= 20

    def test_workers_do_not_change_values(self, oracle):
        parallel = lambda_cauchy_oracle(20, '0.5', 256, make_context(ORACLE_DIGITS), workers=2)
        assert parallel == oracle

    @pytest.mark.slow
    def test_agrees_with_beta_route(self, oracle, evaluator):
        for n, value in enumerate(oracle, start=1):
            assert agreement_digits(value, lambda_int(n, evaluator)) >= 12

    def test_table(self, oracle):
        df = oracle_table(oracle)
        assert list(df.columns) == ['n', 'lambda_n']
        assert len(df) == 20

    @pytest.mark.parametrize('n_max, radius, samples', [
        (20, '0.7', 256),
        (20, '0.5', 100),
        (200, '0.5', 256),
    ])
    def test_bad_parameters(self, n_max, radius, samples):
        with pytest.raises(ValueError):
            lambda_cauchy_oracle(n_max, radius, samples, make_context(ORACLE_DIGITS))


@pytest.mark.tierb
class TestTierB:
    def test_printed_values_in_full(self, evaluator_b):
        assert _agree(lambda_at(Fraction(1, 2), evaluator_b), LAMBDA_HALF) >= 18
        assert _agree(lambda_at(complex(0, 1), evaluator_b), LAMBDA_I) >= 18

    def test_nu_table_digits(self, evaluator_b):
        for q, printed in NU_TABLE.items():
            assert _agree(evaluator_b.nus.nu(q), printed) >= 20, q
