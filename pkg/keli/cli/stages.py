"""One Stage subclass per subcommand."""
from __future__ import annotations

import argparse
import logging

import pandas as pd

from ..analysis import (
    NORMALIZATIONS,
    beta_root_frame,
    deviation_for_first_negative,
    dominant_period,
    finite_difference,
    fit_log_factor,
    load_zeta_zeros,
    noise_gain,
    perturb_zeros,
    phase_coherence,
    phase_frame,
    phase_summary,
    rescale_frame,
    rh_first_negative,
    stride,
    swamping_amplitude,
)
from ..analysis.phases import PHASE_START, PHASES
from ..combinatorics import c_matrix
from ..common import Stage
from ..common.config import (
    DEFAULT_COUNT,
    DEFAULT_DIGITS,
    DEFAULT_K_MAX,
    DEFAULT_Q_MAX,
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
)
from ..common.errors import UsageError, VerificationError
from ..lambda_core import (
    LambdaEvaluator,
    alpha_table,
    lambda_cauchy_oracle,
    lambda_table,
    nu_table,
    solve_alphas,
)
from ..lambda_core.evaluator import DEFAULT_TARGET_DIGITS
from ..mp_kernel import agreement_digits, format_complex, format_real, is_complex, make_context, to_mp
from ..node_pipeline import NodeValueTable, build_node_table, load_node_table, persist_node_table
from ..zeros import (
    FIXTURE_FILE,
    find_zeros,
    load_fixture,
    product_partial,
    read_zero_table,
    verify_against_fixture,
)

logger = logging.getLogger(__name__)

ORACLE_DIGITS = 60
DEFAULT_N_MAX = 20
BROOTS_K_MAX = 70


def parse_index_range(text: str) -> tuple:
    """``3`` or ``1..20`` -> (first, last)."""
    first, sep, last = text.partition('..')
    try:
        low = int(first)
        high = int(last) if sep else low
    except ValueError:
        raise UsageError(f'bad index range {text!r}; use N or A..B') from None
    if not 1 <= low <= high:
        raise UsageError(f'bad index range {text!r}; need 1 <= A <= B')
    return low, high


def format_value(value) -> str:
    return format_complex(value) if is_complex(value) else format_real(value)


def _add_node_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--nodes', type=str, help='Node cache to read (default: build in-process)')
    parser.add_argument('--digits', type=int,
                        help=f'Node precision in decimal digits (default: the cache\'s, else {DEFAULT_DIGITS})')
    parser.add_argument('--count', type=int, default=DEFAULT_COUNT,
                        help=f'Nodes to build when no cache is given (default: {DEFAULT_COUNT})')
    parser.add_argument('--k-max', type=int, default=DEFAULT_K_MAX, dest='k_max',
                        help=f'Coefficients alpha_k to use (default: {DEFAULT_K_MAX})')


def _add_evaluator_options(parser: argparse.ArgumentParser) -> None:
    _add_node_options(parser)
    parser.add_argument('--q-max', type=int, default=DEFAULT_Q_MAX, dest='q_max',
                        help=f'Largest even q of the nu series (default: {DEFAULT_Q_MAX})')
    parser.add_argument('--target-digits', type=int, default=DEFAULT_TARGET_DIGITS, dest='target_digits',
                        help=f'Accuracy goal of lambda evaluations (default: {DEFAULT_TARGET_DIGITS})')


class PipelineStage(Stage):
    """Stage that needs node values, alpha_k or the lambda evaluator."""

    def __init__(self, config, progress: bool = True):
        super().__init__(config, progress)
        self._table: NodeValueTable | None = None
        self._alphas = None
        self._evaluator: LambdaEvaluator | None = None

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        _add_node_options(parser)

    def node_table(self) -> NodeValueTable:
        if self._table is None:
            path = self.config.input_file
            if path:
                self.status(f'Reading node cache: {path}')
                self._table = load_node_table(path, self.config.digits)
            else:
                digits = self.config.digits or DEFAULT_DIGITS
                count = self.config.option('count', DEFAULT_COUNT)
                self.status(f'Building {count} nodes at {digits} digits')
                self._table = build_node_table(count, make_context(digits), workers=self.config.threads,
                                               progress=self.progress)
        return self._table

    def alpha_series(self):
        if self._alphas is None:
            table = self.node_table()
            k_max = min(self.config.k_max or DEFAULT_K_MAX, table.count)
            self._alphas = solve_alphas(table, c_matrix(k_max), make_context(table.digits), k_max)
            self.status(f'alpha_k kept for k <= {self._alphas.k_max} '
                        f'(alpha_1 at {self._alphas.significance(1):.0f} digits)')
        return self._alphas

    def evaluator(self) -> LambdaEvaluator:
        if self._evaluator is None:
            self._evaluator = LambdaEvaluator.build(
                self.alpha_series(),
                q_max=self.config.q_max or DEFAULT_Q_MAX,
                target_digits=self.config.option('target_digits', DEFAULT_TARGET_DIGITS),
                ctx=make_context(self.node_table().digits),
            )
        return self._evaluator


class NodesStage(Stage):
    COMMAND = 'nodes'
    HELP = 'Evaluate f = ln xi at the nodes j/(j+1) and write the node cache'

    def __init__(self, config, progress: bool = True):
        super().__init__(config, progress)
        self.table: NodeValueTable | None = None

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--count', type=int, default=DEFAULT_COUNT,
                            help=f'Number of nodes (default: {DEFAULT_COUNT})')
        parser.add_argument('--digits', type=int, default=DEFAULT_DIGITS,
                            help=f'Precision in decimal digits (default: {DEFAULT_DIGITS})')
        parser.add_argument('--node-set', choices=('v', 'u'), default='v', dest='node_set',
                            help='v: f(j/(j+1)), u: f(1/(j+1)); equal by symmetry (default: v)')
        parser.add_argument('--extend', type=str,
                            help='Existing cache at the same precision whose entries are reused')

    def run(self) -> None:
        if not self.config.output_file:
            raise UsageError('nodes needs --out')
        existing = self.config.option('extend')
        self.table = build_node_table(
            self.config.option('count', DEFAULT_COUNT),
            make_context(self.config.digits or DEFAULT_DIGITS),
            nodes=self.config.option('node_set', 'v'),
            workers=self.config.threads,
            existing=load_node_table(existing) if existing else None,
            progress=self.progress,
        )
        return None

    def export(self):
        persist_node_table(self.table, self.config.output_file)
        return self.config.output_file

    def summary(self) -> list[str]:
        return [f'Nodes: {self.table.count} at {self.table.digits} digits',
                f'sha256: {self.table.digest()}']


class AlphasStage(PipelineStage):
    COMMAND = 'alphas'
    HELP = 'Interpolation coefficients alpha_k with their significance'

    def run(self) -> pd.DataFrame:
        return alpha_table(self.alpha_series())


class NuStage(PipelineStage):
    COMMAND = 'nu'
    HELP = 'Taylor coefficients nu_q of lambda(s)'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        _add_evaluator_options(parser)

    def run(self) -> pd.DataFrame:
        return nu_table(self.evaluator().nus)


class LambdaStage(PipelineStage):
    COMMAND = 'lambda'
    HELP = 'lambda_n for n = 1..n_max, optionally against the Cauchy contour route'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        _add_evaluator_options(parser)
        parser.add_argument('--n-max', type=int, default=DEFAULT_N_MAX, dest='n_max',
                            help=f'Largest n (default: {DEFAULT_N_MAX})')
        parser.add_argument('--oracle', action='store_true',
                            help='Also compute lambda_n from the Cauchy integral and report agreement')
        parser.add_argument('--oracle-digits', type=int, default=ORACLE_DIGITS, dest='oracle_digits',
                            help=f'Working digits of the contour route (default: {ORACLE_DIGITS})')
        parser.add_argument('--radius', type=str, default=DEFAULT_RADIUS,
                            help=f'Contour radius in the z-plane (default: {DEFAULT_RADIUS})')
        parser.add_argument('--samples', type=int, default=DEFAULT_SAMPLES,
                            help=f'Contour samples, a power of two (default: {DEFAULT_SAMPLES})')

    def run(self) -> pd.DataFrame:
        n_max = self.config.option('n_max', DEFAULT_N_MAX)
        df = lambda_table(self.evaluator(), n_max, progress=self.progress)
        if not self.config.option('oracle'):
            return df
        self.status('Running the Cauchy contour route')
        values = lambda_cauchy_oracle(
            n_max,
            self.config.option('radius', DEFAULT_RADIUS),
            self.config.option('samples', DEFAULT_SAMPLES),
            make_context(self.config.option('oracle_digits', ORACLE_DIGITS)),
            workers=self.config.threads,
            progress=self.progress,
        )
        mp = values[0].context
        df['oracle'] = [format_real(v) for v in values]
        df['agreement'] = [round(agreement_digits(to_mp(mp, text), v), 1)
                           for text, v in zip(df['lambda_n'], values)]
        return df

    def summary(self) -> list[str]:
        if self.result_df is None or 'agreement' not in self.result_df:
            return []
        return [f'Worst agreement with the contour route: {self.result_df["agreement"].min():.1f} digits']


class EvalStage(PipelineStage):
    COMMAND = 'eval'
    HELP = 'lambda(s) at a real or complex point'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        _add_evaluator_options(parser)
        parser.add_argument('--s', type=str, required=True, dest='s',
                            help='Point, e.g. 0.5, 1+1i, 2.5e1-3i (use --s=-1 for a leading minus)')
        parser.add_argument('--derivative', action='store_true', help="Also report lambda'(s)")
        parser.add_argument('--series', action='store_true', help='Also sum the nu power series')

    def run(self) -> pd.DataFrame:
        ev = self.evaluator()
        s = self.config.option('s')
        result = ev.evaluate(s, derivative=bool(self.config.option('derivative')), significance=True)
        row = {'s': s, 'lambda': format_value(result.value),
               'significance': round(result.significance, 1), 'terms': result.terms}
        if result.derivative is not None:
            row['derivative'] = format_value(result.derivative)
        if self.config.option('series'):
            row['series'] = format_value(ev.lambda_series(s))
        return pd.DataFrame([row])


class ZerosStage(PipelineStage):
    COMMAND = 'zeros'
    HELP = 'Zeros sigma_k of lambda(s) by Newton iteration'
    zeros = ()

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        _add_evaluator_options(parser)
        parser.add_argument('--k', type=str, default='1', dest='k_range', help='Index or range A..B (default: 1)')
        parser.add_argument('--tol', type=str, default=DEFAULT_TOL,
                            help=f'Residual tolerance |lambda| < tol (default: {DEFAULT_TOL})')
        parser.add_argument('--prior', type=str, help='Zero table whose entries seed the search')
        parser.add_argument('--no-certify', action='store_true', dest='no_certify',
                            help='Skip the higher-precision residual check')

    def zero_table(self):
        low, high = parse_index_range(self.config.option('k_range', '1'))
        prior = self.config.option('prior')
        return find_zeros(
            self.evaluator(), low, high, self.config.tol or DEFAULT_TOL,
            prior=read_zero_table(prior) if prior else None,
            workers=self.config.threads,
            certify=not self.config.option('no_certify'),
            progress=self.progress,
        )

    def run(self) -> pd.DataFrame:
        self.zeros = self.zero_table()
        return self.zeros.to_frame()

    def summary(self) -> list[str]:
        return [f'sigma_{z.index} = {z.value.context.nstr(z.value, 15)}, |sigma| = '
                f'{z.value.context.nstr(z.modulus, 10)}, {z.newton_steps} Newton steps' for z in self.zeros]


class VerifyStage(ZerosStage):
    COMMAND = 'verify'
    HELP = 'Recompute zeros and compare them with a reference table'
    report = None

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument('--fixture', type=str, help='Reference table (default: the shipped zero table)')

    def run(self) -> pd.DataFrame:
        self.zeros = self.zero_table()
        fixture = self.config.option('fixture')
        reference = read_zero_table(fixture, provenance='fixture') if fixture else load_fixture()
        self.report = verify_against_fixture(self.zeros, reference)
        return self.report.to_frame()

    def summary(self) -> list[str]:
        return super().summary() + [f'Verification status: {self.report.status}']

    def check(self) -> None:
        if not self.report.passed:
            raise VerificationError(f'zeros do not match the reference table (status {self.report.status})')


def _zero_source(config):
    path = config.option('zeros')
    return read_zero_table(path, provenance='fixture') if path else load_fixture()


class ProductStage(PipelineStage):
    COMMAND = 'product'
    HELP = 'const s^2 times the product over the first N zero families'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        _add_evaluator_options(parser)
        parser.add_argument('--s', type=str, default='0.5', dest='s', help='Point (default: 0.5)')
        parser.add_argument('--zeros', type=str, help=f'Zero table (default: {FIXTURE_FILE.name})')
        parser.add_argument('--n', type=int, dest='n_zeros', help='Zero families used (default: all)')
        parser.add_argument('--const', type=str,
                            help='Leading constant (default: nu_2 from the node data)')
        parser.add_argument('--compare', action='store_true', help='Also evaluate lambda(s) and report agreement')

    def run(self) -> pd.DataFrame:
        zeros = _zero_source(self.config)
        count = self.config.option('n_zeros') or len(zeros)
        const = self.config.option('const') or self.evaluator().nus.nu(2)
        s = self.config.option('s', '0.5')
        value = product_partial(s, zeros, count, const)
        row = {'s': s, 'n': count, 'const': const if isinstance(const, str) else format_real(const),
               'product': format_value(value)}
        if self.config.option('compare'):
            reference = self.evaluator().evaluate(s).value
            row['lambda'] = format_value(reference)
            row['relative_difference'] = float(abs(value - to_mp(value.context, reference)) / abs(reference))
        return pd.DataFrame([row])


class FitStage(Stage):
    COMMAND = 'fit'
    HELP = 'Fit Im sigma_k = c ln Re sigma_k, or rescale the zeros for plotting'
    factor = None

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--zeros', type=str, help=f'Zero table (default: {FIXTURE_FILE.name})')
        parser.add_argument('--k-min', type=int, default=100, dest='k_min', help='First index fitted (default: 100)')
        parser.add_argument('--rescale', action='store_true', help='Emit (Re sigma, exp(Im sigma / 16)) rows instead')

    def run(self) -> pd.DataFrame:
        zeros = _zero_source(self.config)
        if self.config.option('rescale'):
            return rescale_frame(zeros)
        k_min = self.config.option('k_min', 100)
        self.factor = fit_log_factor(zeros, k_min)
        used = sum(1 for z in zeros if z.index >= k_min)
        return pd.DataFrame([{'k_min': k_min, 'zeros': used, 'c': self.factor}])

    def summary(self) -> list[str]:
        return [f'Log-law factor c = {self.factor:.6f}'] if self.factor is not None else []


class FdiffStage(Stage):
    COMMAND = 'fdiff'
    HELP = 'High-order finite differences of the zero sequence and their norm'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--zeros', type=str, help=f'Zero table (default: {FIXTURE_FILE.name})')
        parser.add_argument('--order', type=int, default=700, help='Difference order m (default: 700)')
        parser.add_argument('--normalization', choices=NORMALIZATIONS, default='none',
                            help='none, or pow2 to divide by 2^m (default: none)')
        parser.add_argument('--stride', type=int, default=1, help='Use every n-th zero (default: 1)')
        parser.add_argument('--offset', type=int, default=0, help='First zero position used (default: 0)')
        parser.add_argument('--perturb', type=str, default='0',
                            help='Also difference the zeros moved by up to this amount (default: 0)')
        parser.add_argument('--seed', type=int, default=0, help='RNG seed of the perturbation (default: 0)')
        parser.add_argument('--series', action='store_true', help='Emit every difference instead of the norms')

    def run(self) -> pd.DataFrame:
        zeros = _zero_source(self.config)
        order = self.config.option('order', 700)
        normalization = self.config.option('normalization', 'none')
        points = stride(zeros, self.config.option('stride', 1), self.config.option('offset', 0))
        diffs = finite_difference(points, order, normalization)
        if self.config.option('series'):
            return pd.DataFrame(
                [{'i': i, 'diff': format_complex(v)} for i, v in enumerate(diffs.complex_values(), start=1)],
                columns=['i', 'diff'])

        row = {'order': order, 'length': len(diffs.values), 'norm': format_real(diffs.norm()),
               'noise_gain': format_real(noise_gain(order, normalization)),
               'swamping_amplitude': format_real(swamping_amplitude(diffs))}
        amplitude = self.config.option('perturb', '0')
        if float(amplitude) > 0:
            moved = perturb_zeros(points, amplitude, self.config.seed or 0)
            perturbed = finite_difference(moved, order, normalization).norm()
            row['perturbed_norm'] = format_real(perturbed)
            row['ratio'] = float(perturbed / diffs.norm())
        return pd.DataFrame([row])


class RhsimStage(Stage):
    COMMAND = 'rhsim'
    HELP = 'First negative zero sum when one zeta zero leaves the critical line'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--gammas', type=str, help='Ordinate file (default: the shipped first 100)')
        parser.add_argument('--count', type=int, help='Ordinates used (default: all in the file)')
        parser.add_argument('--index', type=int, default=1, help='Ordinate moved off the line (default: 1)')
        parser.add_argument('--delta', type=str, default='0.25', help='Re rho - 1/2 of the moved zero (default: 0.25)')
        parser.add_argument('--n-max', type=int, default=5000, dest='n_max', help='Last n scanned (default: 5000)')
        parser.add_argument('--scan', type=str, help='Comma-separated deltas, one row each')
        parser.add_argument('--target-n', type=int, dest='target_n',
                            help='Find the smallest delta whose first negative n is at most this')

    def run(self) -> pd.DataFrame:
        gammas = load_zeta_zeros(self.config.option('gammas'), self.config.option('count'))
        index = self.config.option('index', 1)
        n_max = self.config.option('n_max', 5000)
        target = self.config.option('target_n')
        if target:
            delta, n = deviation_for_first_negative(gammas, index, target, self.config.threads)
            return pd.DataFrame([{'index': index, 'target_n': target, 'delta': delta, 'first_negative': n}])

        scan = self.config.option('scan')
        deltas = [d.strip() for d in scan.split(',')] if scan else [self.config.option('delta', '0.25')]
        rows = []
        for delta in deltas:
            n = rh_first_negative(gammas, index, float(delta), n_max, self.config.threads, self.progress)
            rows.append({'index': index, 'delta': delta, 'n_max': n_max, 'first_negative': n})
        df = pd.DataFrame(rows, columns=['index', 'delta', 'n_max', 'first_negative'])
        # None (no sign change up to n_max) stays an empty cell, not a float NaN
        df['first_negative'] = df['first_negative'].astype('Int64')
        return df


class BrootsStage(Stage):
    COMMAND = 'broots'
    HELP = 'Complex roots of the beta polynomials beta_1 .. beta_kmax'

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--k-max', type=int, default=BROOTS_K_MAX, dest='k_max',
                            help=f'Last polynomial (default: {BROOTS_K_MAX})')
        parser.add_argument('--digits', type=int, default=30, help='Root precision in decimal digits (default: 30)')

    def run(self) -> pd.DataFrame:
        k_max = self.config.k_max or BROOTS_K_MAX
        self.status(f'Finding the roots of beta_1 .. beta_{k_max}')
        return beta_root_frame(k_max, self.config.digits or 30)


class PhasesStage(Stage):
    COMMAND = 'phases'
    HELP = 'Split the zeros by k mod 3 around the log law'
    coherence = None
    period = None

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--zeros', type=str, help=f'Zero table (default: {FIXTURE_FILE.name})')
        parser.add_argument('--k-min', type=int, default=PHASE_START, dest='k_min',
                            help=f'First zero used (default: {PHASE_START})')
        parser.add_argument('--phases', type=int, default=PHASES, help=f'Residue classes (default: {PHASES})')
        parser.add_argument('--points', action='store_true', help='Emit every zero with its phase instead')

    def run(self) -> pd.DataFrame:
        zeros = _zero_source(self.config)
        k_min = self.config.option('k_min', PHASE_START)
        phases = self.config.option('phases', PHASES)
        frame = phase_frame(zeros, phases, k_min)
        self.coherence = phase_coherence(zeros, phases, k_min)
        self.period = dominant_period(zeros, max(6, phases), k_min)
        return frame if self.config.option('points') else phase_summary(frame)

    def summary(self) -> list[str]:
        if self.coherence is None:
            return []
        return [f'Consecutive steps are {self.coherence:.2f}x the steps within a phase',
                f'Smoothest period: {self.period}']


STAGES = (
    NodesStage,
    AlphasStage,
    NuStage,
    LambdaStage,
    EvalStage,
    ZerosStage,
    VerifyStage,
    ProductStage,
    FitStage,
    FdiffStage,
    RhsimStage,
    BrootsStage,
    PhasesStage,
)
