import math

import pytest

from keli.common.errors import DerivativeUnderflowError, OutOfRadiusError, ZeroListError
from keli.mp_kernel import agreement_digits, make_context, to_mp
from keli.zeros import (
    RELATIVE_THRESHOLD,
    ComplexZero,
    ZeroTable,
    certify_zero,
    check_mirror_symmetry,
    find_zeros,
    linear_factors,
    load_fixture,
    product_partial,
    quartic_factor,
    read_zero_table,
    refine_zero,
    seed_zero,
    verify_against_fixture,
    write_zero_table,
)

FIXTURE_LENGTH = 3520
SIGMA_1 = ('76.010927161420', '72.007003457304')
SIGMA_10 = ('888.11455089448', '108.307075737171')
SIGMA_1_MODULUS = '104.7027678'
CONST = '0.023098802283424104776762431610'
LAMBDA_HALF = '0.005774507219796948948'


@pytest.fixture(scope='module')
def fixture():
    return load_fixture()


@pytest.fixture(scope='module')
def mp():
    return make_context(30).mp()


def _zero(mp, index, re, im):
    return ComplexZero(index, mp.mpf(re), mp.mpf(im))


class TestFixture:
    def test_shape(self, fixture):
        assert len(fixture) == FIXTURE_LENGTH
        assert fixture.provenance == 'fixture'
        assert fixture.indices[:3] == [1, 2, 3]

    def test_known_entries(self, fixture, mp):
        first = fixture.by_index(1)
        assert first.re == to_mp(first.re.context, SIGMA_1[0])
        assert first.im == to_mp(first.im.context, SIGMA_1[1])
        tenth = fixture.by_index(10)
        assert agreement_digits(tenth.re, tenth.re.context.mpf(SIGMA_10[0])) > 13
        assert abs(first.modulus - first.re.context.mpf(SIGMA_1_MODULUS)) < 1e-6

    def test_log_law_shape(self, fixture):
        # Im grows roughly like 16 ln Re
        for zero in (fixture.by_index(100), fixture.by_index(3000)):
            assert abs(float(zero.im) / math.log(float(zero.re)) - 16) < 1

    def test_seed_law_within_two_percent(self, fixture):
        for zero in fixture.select(10):
            re, im = float(zero.re), float(zero.im)
            assert abs(im - 16 * math.log(re)) < 0.02 * im, zero.index

    def test_family(self, fixture):
        s, conj, neg, neg_conj = fixture.by_index(1).family()
        assert conj == s.conjugate()
        assert neg == -s
        assert neg_conj == -s.conjugate()

    def test_missing_index(self, fixture):
        assert fixture.by_index(FIXTURE_LENGTH + 1) is None


class TestZeroTable:
    def test_zero_outside_quadrant(self, mp):
        with pytest.raises(ZeroListError):
            _zero(mp, 1, '-1', '2')
        with pytest.raises(ZeroListError):
            _zero(mp, 1, '1', '-2')
        with pytest.raises(ZeroListError):
            _zero(mp, 0, '1', '2')

    def test_real_parts_increase(self, mp):
        with pytest.raises(ZeroListError):
            ZeroTable((_zero(mp, 1, '80', '70'), _zero(mp, 2, '70', '80')))

    def test_duplicate_index(self, mp):
        with pytest.raises(ZeroListError):
            ZeroTable((_zero(mp, 1, '70', '70'), _zero(mp, 1, '80', '80')))

    def test_bad_provenance(self):
        with pytest.raises(ZeroListError):
            ZeroTable((), 'guessed')

    def test_nearest(self, fixture):
        fifth, sixth = fixture.by_index(5), fixture.by_index(6)
        assert fixture.nearest(fifth.re).index == 5
        assert fixture.nearest(fifth.re * 0.7 + sixth.re * 0.3).index == 5
        assert fixture.nearest(fifth.re * 0.3 + sixth.re * 0.7).index == 6
        assert fixture.nearest(1).index == 1
        assert fixture.nearest(10 ** 9).index == FIXTURE_LENGTH
        assert ZeroTable(()).nearest(1) is None

    def test_select_and_head(self, fixture):
        assert fixture.select(5, 9).indices == [5, 6, 7, 8, 9]
        assert fixture.select(3518).indices == [3518, 3519, 3520]
        assert len(fixture.head(4)) == 4

    def test_frame_columns(self, fixture, mp):
        assert list(fixture.head(2).to_frame().columns) == ['k', 're', 'im']
        computed = ZeroTable((ComplexZero(1, mp.mpf(76), mp.mpf(72), residual=mp.mpf('1e-25')),))
        assert list(computed.to_frame().columns) == ['k', 're', 'im', 'residual']

    def test_round_trip(self, fixture, tmp_path):
        path = tmp_path / 'zeros.csv'
        write_zero_table(fixture.head(10), path, header_lines=['# keli zeros', '# tol: 1e-20'])
        assert path.read_text(encoding='utf-8').startswith('# keli zeros\n')
        loaded = read_zero_table(path)
        assert loaded.indices == list(range(1, 11))
        for a, b in zip(loaded, fixture.head(10)):
            assert a.re == b.re and a.im == b.im

    def test_missing_columns(self, tmp_path):
        path = tmp_path / 'bad.csv'
        path.write_text('k,re\n1,76.0\n', encoding='utf-8')
        with pytest.raises(ZeroListError):
            read_zero_table(path)

    def test_malformed_row(self, tmp_path):
        path = tmp_path / 'bad.csv'
        path.write_text('k,re,im\n1,seventy,72.0\n', encoding='utf-8')
        with pytest.raises(ZeroListError):
            read_zero_table(path)


class TestSeeds:
    def test_fallback_seed(self):
        seed = seed_zero(1)
        assert seed.real == pytest.approx(76.7)
        assert seed.imag == pytest.approx(16 * math.log(76.7))

    def test_seed_continues_prior(self, fixture):
        seed = seed_zero(3, fixture.head(2))
        expected = float(fixture.by_index(3).re)
        assert abs(seed.real - expected) / expected < 0.05

    def test_seed_from_fit(self, fixture):
        # nothing below k = 1, so the linear fit of the prior decides
        seed = seed_zero(1, fixture.select(2, 40))
        assert abs(seed.real - 76.01) < 20

    def test_rejects_k_zero(self):
        with pytest.raises(ValueError):
            seed_zero(0)

    def test_bad_range(self):
        with pytest.raises(ValueError):
            find_zeros(None, 5, 4, '1e-20')


class TestProduct:
    def test_quartic_equals_linear(self, fixture, mp):
        for s in (mp.mpf('0.5'), mp.mpc(3, 1), mp.mpc(80, 70)):
            for zero in fixture.head(5):
                difference = quartic_factor(s, zero) - linear_factors(s, zero)
                assert abs(difference) < mp.mpf('1e-25') * max(1, abs(linear_factors(s, zero)))

    def test_factor_vanishes_at_zero(self, fixture, mp):
        zero = fixture.by_index(1)
        assert abs(quartic_factor(to_mp(mp, zero.value), zero)) < mp.mpf('1e-25')

    def test_empty_product(self, fixture, mp):
        value = product_partial('0.5', fixture, 0, CONST)
        assert abs(value - mp.mpf(CONST) / 4) < mp.mpf('1e-28')

    def test_count_range(self, fixture):
        with pytest.raises(ValueError):
            product_partial('0.5', fixture, FIXTURE_LENGTH + 1, CONST)
        with pytest.raises(ValueError):
            product_partial('0.5', fixture, -1, CONST)

    def test_full_product_reaches_lambda_half(self, fixture, mp):
        value = product_partial('0.5', fixture, FIXTURE_LENGTH, CONST)
        expected = mp.mpf(LAMBDA_HALF)
        assert abs(value - expected) / expected < 1e-4

    def test_partial_products_approach(self, fixture, mp):
        expected = mp.mpf(LAMBDA_HALF)
        errors = [abs(product_partial('0.5', fixture, n, CONST) - expected) for n in (10, 100, 1000)]
        assert errors[0] > errors[1] > errors[2]


class TestVerify:
    def test_fixture_against_itself(self, fixture):
        report = verify_against_fixture(fixture.head(20), fixture)
        assert report.status == 'pass'
        assert report.passed
        assert len(report.to_frame()) == 20

    def test_perturbed_zero_fails(self, fixture, mp):
        first = fixture.by_index(1)
        moved = ComplexZero(1, first.re * (1 + mp.mpf('1e-10')), first.im)
        report = verify_against_fixture(ZeroTable((moved,)), fixture)
        assert report.status == 'fail'
        assert report.comparisons[0].rel_re > RELATIVE_THRESHOLD

    def test_misaligned_index(self, fixture):
        second = fixture.by_index(2)
        relabelled = ComplexZero(1, second.re, second.im)
        report = verify_against_fixture(ZeroTable((relabelled,)), fixture)
        assert report.status == 'misaligned'
        assert report.comparisons[0].matched_index == 2

    def test_whole_fixture_against_itself(self, fixture):
        report = verify_against_fixture(fixture, fixture)
        assert report.status == 'pass'
        assert len(report.comparisons) == FIXTURE_LENGTH

    def test_empty(self, fixture):
        assert verify_against_fixture(fixture.head(3), ZeroTable(())).status == 'empty'
        assert verify_against_fixture(ZeroTable(()), fixture).status == 'empty'


@pytest.mark.slow
class TestNewton:
    def test_first_zero(self, sigma_1, fixture):
        reference = fixture.by_index(1)
        assert sigma_1.index == 1
        assert float(abs(sigma_1.re - to_mp(sigma_1.re.context, reference.re)) / sigma_1.re) < 1e-12
        assert float(abs(sigma_1.im - to_mp(sigma_1.im.context, reference.im)) / sigma_1.im) < 1e-12
        assert sigma_1.residual < sigma_1.residual.context.mpf('1e-20')

    @pytest.mark.parametrize('direction', [1, -1, 1j, -1j])
    def test_basin_is_stable(self, sigma_1, evaluator, fixture, direction):
        spacing = float(fixture.by_index(2).re - fixture.by_index(1).re)
        seed = complex(sigma_1.value) + 0.05 * spacing * direction
        moved = refine_zero(seed, evaluator, '1e-20', index=1)
        assert agreement_digits(moved.value, sigma_1.value) > 15

    def test_quadratic_convergence_recorded(self, sigma_1):
        assert sigma_1.newton_steps >= 2
        assert sigma_1.last_step_ratio is not None

    def test_certify(self, sigma_1, evaluator):
        certified = certify_zero(sigma_1, evaluator, '1e-20')
        assert certified.re == sigma_1.re
        assert certified.residual < certified.residual.context.mpf('1e-19')

    def test_mirror_symmetry(self, sigma_1, evaluator):
        check_mirror_symmetry(sigma_1.value, evaluator, 20)

    def test_find_zeros(self, evaluator, sigma_1):
        table = find_zeros(evaluator, 1, 1, '1e-20', certify=False)
        assert table.indices == [1]
        assert agreement_digits(table[0].value, sigma_1.value) > 15

    def test_double_zero_at_origin(self, evaluator):
        with pytest.raises(DerivativeUnderflowError):
            refine_zero(complex(0.1, 0.1), evaluator, '1e-20')

    def test_outside_reliable_radius(self, evaluator):
        with pytest.raises(OutOfRadiusError):
            refine_zero(complex(5000, 10), evaluator, '1e-20', radius=evaluator.reliable_radius())


@pytest.mark.tierb
class TestTierB:
    def test_first_zeros_match_fixture(self, evaluator_b, fixture):
        table = find_zeros(evaluator_b, 1, 2, '1e-30')
        assert verify_against_fixture(table, fixture).status == 'pass'
        first = table.by_index(1)
        assert abs(first.modulus - first.re.context.mpf(SIGMA_1_MODULUS)) < 1e-6
