"""Comparison of computed zeros with a reference table."""
from __future__ import annotations

from dataclasses import dataclass

import pandas as pd

from ..mp_kernel import make_context, to_mp
from .zero_table import ZeroTable

RELATIVE_THRESHOLD = 5e-14
STATUSES = ('pass', 'fail', 'misaligned', 'empty')


@dataclass(frozen=True)
class ZeroComparison:
    index: int
    matched_index: int
    rel_re: float
    rel_im: float

    @property
    def aligned(self) -> bool:
        return self.index == self.matched_index

    @property
    def passed(self) -> bool:
        return self.aligned and self.rel_re <= RELATIVE_THRESHOLD and self.rel_im <= RELATIVE_THRESHOLD


@dataclass(frozen=True)
class VerificationReport:
    comparisons: tuple
    threshold: float = RELATIVE_THRESHOLD

    @property
    def status(self) -> str:
        if not self.comparisons:
            return 'empty'
        if any(not c.aligned for c in self.comparisons):
            return 'misaligned'
        return 'pass' if all(c.passed for c in self.comparisons) else 'fail'

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    def to_frame(self) -> pd.DataFrame:
        columns = ['k', 'matched_k', 'rel_re', 'rel_im', 'passed']
        rows = [{'k': c.index, 'matched_k': c.matched_index, 'rel_re': c.rel_re,
                 'rel_im': c.rel_im, 'passed': c.passed} for c in self.comparisons]
        return pd.DataFrame(rows, columns=columns)


def _relative(mp, value, reference) -> float:
    value, reference = to_mp(mp, value), to_mp(mp, reference)
    return float(abs(value - reference) / abs(reference))


def verify_against_fixture(computed: ZeroTable, fixture: ZeroTable) -> VerificationReport:
    """Relative deviations of re and im against the nearest-re fixture entry.

    The nearest entry comes from bisecting the fixture's sorted real parts.
    Only computed zeros whose index lies in the fixture's index range take
    part; a match whose fixture index differs from the computed one is
    reported as misaligned.
    """
    if not len(fixture):
        return VerificationReport(())
    mp = make_context(30).mp()
    low, high = min(fixture.indices), max(fixture.indices)
    comparisons = []
    for zero in computed:
        if not low <= zero.index <= high:
            continue
        nearest = fixture.nearest(zero.re)
        comparisons.append(ZeroComparison(
            index=zero.index,
            matched_index=nearest.index,
            rel_re=_relative(mp, zero.re, nearest.re),
            rel_im=_relative(mp, zero.im, nearest.im),
        ))
    return VerificationReport(tuple(comparisons))
