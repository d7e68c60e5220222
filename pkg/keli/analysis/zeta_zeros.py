"""Ordinates of nontrivial zeta zeros, read from text files (never computed here)."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from ..common.errors import ZeroListError
from ..mp_kernel import make_context, to_mp

DATA_DIR = Path(__file__).parent / 'data'
GAMMA_FILE = DATA_DIR / 'gamma.txt'
FIRST_ORDINATE_FLOOR = 14


@dataclass(frozen=True)
class ZetaZeroList:
    """gamma_1 < gamma_2 < ... for the zeros 1/2 + i gamma_j."""
    ordinates: tuple

    def __post_init__(self):
        if not self.ordinates:
            raise ZeroListError('empty zeta zero list')
        if not self.ordinates[0] > FIRST_ORDINATE_FLOOR:
            raise ZeroListError(f'first ordinate must exceed {FIRST_ORDINATE_FLOOR}, got {self.ordinates[0]}')
        for j, (prev, cur) in enumerate(zip(self.ordinates, self.ordinates[1:]), start=2):
            if not cur > prev:
                raise ZeroListError(f'ordinates must increase strictly; entry {j} is {cur} after {prev}')

    def __len__(self) -> int:
        return len(self.ordinates)

    def head(self, count: int) -> 'ZetaZeroList':
        if count > len(self.ordinates):
            raise ZeroListError(f'{count} ordinates requested, {len(self.ordinates)} available')
        return ZetaZeroList(self.ordinates[:count])

    def as_floats(self) -> list:
        return [float(g) for g in self.ordinates]


def load_zeta_zeros(source: str | Path | None = None, count: int | None = None, digits: int = 30) -> ZetaZeroList:
    """One decimal ordinate per line, ``#`` comments; the shipped first-100 list by default."""
    source = GAMMA_FILE if source is None else source
    df = pd.read_csv(source, comment='#', header=None, names=['gamma'], dtype=str,
                     skip_blank_lines=True)
    mp = make_context(digits).working_mp()
    ordinates = []
    for line, text in enumerate(df['gamma'], start=1):
        try:
            ordinates.append(to_mp(mp, text.strip()))
        except ValueError:
            raise ZeroListError(f'{source}: ordinate {line} is not a number: {text!r}') from None
    zeros = ZetaZeroList(tuple(ordinates))
    return zeros.head(count) if count is not None else zeros
