"""Zeros of lambda(s) in the canonical quadrant and their CSV tables."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import pandas as pd

from ..common.errors import ZeroListError
from ..mp_kernel import format_real, make_context, to_mp

DATA_DIR = Path(__file__).parent / 'data'
FIXTURE_FILE = DATA_DIR / 'reference_zeros.csv'
PROVENANCES = ('computed', 'fixture')
FIXTURE_DIGITS = 30


@dataclass(frozen=True)
class ComplexZero:
    """sigma_k = re + i im with re > 0, im >= 0; stands for the family +-re +- i im."""
    index: int
    re: object
    im: object
    residual: object | None = None
    newton_steps: int = 0
    last_step_ratio: float | None = None

    def __post_init__(self):
        if self.index < 1:
            raise ZeroListError(f'zero index must be >= 1, got {self.index}')
        if not self.re > 0 or self.im < 0:
            raise ZeroListError(f'zero {self.index} is outside the canonical quadrant: {self.re}, {self.im}')

    @property
    def value(self):
        mp = self.re.context
        return mp.mpc(self.re, self.im)

    @property
    def modulus(self):
        return abs(self.value)

    def family(self) -> tuple:
        """The four zeros sigma, conj(sigma), -sigma, -conj(sigma)."""
        s = self.value
        return s, s.conjugate(), -s, -s.conjugate()


@dataclass(frozen=True)
class ZeroTable:
    zeros: tuple
    provenance: str = 'computed'

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ZeroListError(f'provenance must be one of {PROVENANCES}, got {self.provenance!r}')
        for prev, cur in zip(self.zeros, self.zeros[1:]):
            if not cur.re > prev.re:
                raise ZeroListError(
                    f'zeros must have strictly increasing real parts: k={prev.index} then k={cur.index}')
        indices = [z.index for z in self.zeros]
        if len(set(indices)) != len(indices):
            raise ZeroListError('duplicate zero index')

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, position: int) -> ComplexZero:
        return self.zeros[position]

    @property
    def indices(self) -> list:
        return [z.index for z in self.zeros]

    @cached_property
    def _positions(self) -> dict:
        return {zero.index: position for position, zero in enumerate(self.zeros)}

    @cached_property
    def _real_parts(self) -> list:
        mp = make_context(FIXTURE_DIGITS).mp()
        return [to_mp(mp, zero.re) for zero in self.zeros]

    def by_index(self, k: int) -> ComplexZero | None:
        position = self._positions.get(k)
        return None if position is None else self.zeros[position]

    def nearest(self, re) -> ComplexZero | None:
        """The zero whose real part is closest to ``re``; real parts are sorted, so this bisects."""
        if not self.zeros:
            return None
        keys = self._real_parts
        target = to_mp(keys[0].context, re)
        position = bisect.bisect_left(keys, target)
        candidates = [p for p in (position - 1, position) if 0 <= p < len(keys)]
        return self.zeros[min(candidates, key=lambda p: abs(keys[p] - target))]

    def head(self, count: int) -> 'ZeroTable':
        return ZeroTable(self.zeros[:count], self.provenance)

    def select(self, k_min: int, k_max: int | None = None) -> 'ZeroTable':
        kept = tuple(z for z in self.zeros if z.index >= k_min and (k_max is None or z.index <= k_max))
        return ZeroTable(kept, self.provenance)

    def to_frame(self) -> pd.DataFrame:
        """k, re, im and, when every zero has one, residual; values as exact decimal text."""
        columns = ['k', 're', 'im']
        with_residual = bool(self.zeros) and all(z.residual is not None for z in self.zeros)
        if with_residual:
            columns.append('residual')
        rows = []
        for zero in self.zeros:
            row = {'k': zero.index, 're': format_real(zero.re), 'im': format_real(zero.im)}
            if with_residual:
                row['residual'] = format_real(zero.residual)
            rows.append(row)
        return pd.DataFrame(rows, columns=columns)


def write_zero_table(table: ZeroTable, destination: str | Path, header_lines: list[str] = ()) -> None:
    text = ''.join(f'{line}\n' for line in header_lines)
    text += table.to_frame().to_csv(index=False, lineterminator='\n')
    Path(destination).write_text(text, encoding='utf-8', newline='\n')


def read_zero_table(source: str | Path, provenance: str = 'computed', digits: int = FIXTURE_DIGITS) -> ZeroTable:
    """Read a `k,re,im[,residual]` CSV (``#`` comment lines allowed)."""
    df = pd.read_csv(source, comment='#', dtype=str, skipinitialspace=True)
    missing = {'k', 're', 'im'} - set(df.columns)
    if missing:
        raise ZeroListError(f'{source}: missing columns {sorted(missing)}')
    mp = make_context(digits).working_mp()
    zeros = []
    for row in df.itertuples(index=False):
        residual = getattr(row, 'residual', None)
        try:
            zeros.append(ComplexZero(
                index=int(row.k),
                re=to_mp(mp, row.re),
                im=to_mp(mp, row.im),
                residual=to_mp(mp, residual) if isinstance(residual, str) else None,
            ))
        except ValueError as exc:
            if isinstance(exc, ZeroListError):
                raise
            raise ZeroListError(f'{source}: malformed row k={row.k}: {exc}') from None
    return ZeroTable(tuple(zeros), provenance)


def load_fixture(digits: int = FIXTURE_DIGITS) -> ZeroTable:
    """The shipped table of 3520 zeros, 14 significant digits each."""
    return read_zero_table(FIXTURE_FILE, provenance='fixture', digits=digits)
