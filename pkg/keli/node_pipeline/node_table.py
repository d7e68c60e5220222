"""Table of f at the interpolation nodes j/(j+1): build, persist, reload."""
from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from tqdm import tqdm

from ..common.errors import (
    InsufficientPrecisionError,
    NodeTableError,
    NodeTableParseError,
    NodeTableTruncatedError,
    NodeTableVersionError,
)
from ..mp_kernel import PrecisionContext, digits_to_bits, format_real, make_context, parse_real, to_mp
from ..special_functions import xi_log

logger = logging.getLogger(__name__)

MAGIC = '# keli-node-table v1'
NODE_SETS = ('v', 'u')


@dataclass(frozen=True)
class NodeValueTable:
    """f(j/(j+1)) for j = 1..count, rounded to ``digits`` decimal digits."""
    digits: int
    count: int
    values: tuple

    def __post_init__(self):
        if self.count < 1:
            raise NodeTableError(f'count must be >= 1, got {self.count}')
        if len(self.values) != self.count:
            raise NodeTableError(f'expected {self.count} values, got {len(self.values)}')
        for j, value in self.entries:
            if not hasattr(value, '_mpf_') or not value.context.isfinite(value):
                raise NodeTableError(f'entry {j} is not a finite real: {value!r}')

    @property
    def bits(self) -> int:
        return digits_to_bits(self.digits)

    @property
    def entries(self) -> Iterator[tuple]:
        return ((j, value) for j, value in enumerate(self.values, start=1))

    def value(self, j: int):
        if not 1 <= j <= self.count:
            raise IndexError(f'node index {j} outside 1..{self.count}')
        return self.values[j - 1]

    def serialize(self) -> str:
        lines = [MAGIC, f'digits: {self.digits}', f'count: {self.count}']
        lines += [f'{j} {format_real(value, self.bits)}' for j, value in self.entries]
        return '\n'.join(lines) + '\n'

    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode('ascii')).hexdigest()

    def rounded(self, digits: int) -> 'NodeValueTable':
        """Copy rounded to fewer digits."""
        if digits > self.digits:
            raise InsufficientPrecisionError(
                f'node table has {self.digits} digits, {digits} requested')
        if digits == self.digits:
            return self
        mp = make_context(digits).working_mp()
        return NodeValueTable(digits, self.count, tuple(to_mp(mp, v) for v in self.values))

    def head(self, count: int) -> 'NodeValueTable':
        if count > self.count:
            raise InsufficientPrecisionError(f'node table has {self.count} entries, {count} requested')
        return NodeValueTable(self.digits, count, self.values[:count])


def node_point(j: int, nodes: str = 'v') -> Fraction:
    """The node paired with index j: v = j/(j+1) or its mirror u = 1/(j+1)."""
    if nodes == 'v':
        return Fraction(j, j + 1)
    if nodes == 'u':
        return Fraction(1, j + 1)
    raise ValueError(f'unknown node set: {nodes}; use one of {NODE_SETS}')


def _node_value_text(job: tuple) -> str:
    j, digits, nodes = job
    ctx = make_context(digits)
    value = xi_log(node_point(j, nodes), ctx)
    return format_real(to_mp(ctx.working_mp(), value), ctx.working_bits)


def build_node_table(count: int, ctx: PrecisionContext, nodes: str = 'v', workers: int = 1,
                     existing: NodeValueTable | None = None, progress: bool = False) -> NodeValueTable:
    """Evaluate f at the first ``count`` nodes.

    Args:
        count: number of nodes
        ctx: precision context; values are stored rounded to its working digits
        nodes: 'v' evaluates f(j/(j+1)), 'u' evaluates f(1/(j+1)); equal by symmetry
        workers: process count; every entry is independent so the result does not depend on it
        existing: table at the same digits whose entries are reused (append-only build)
        progress: show a tqdm bar
    """
    if count < 1:
        raise ValueError(f'count must be >= 1, got {count}')
    node_point(1, nodes)

    reused: tuple = ()
    if existing is not None:
        if existing.digits != ctx.working_digits:
            logger.warning('Ignoring existing node table at %d digits (run uses %d)',
                           existing.digits, ctx.working_digits)
        else:
            reused = existing.values[:count]

    jobs = [(j, ctx.working_digits, nodes) for j in range(len(reused) + 1, count + 1)]
    logger.info('Evaluating %d nodes at %d digits (%d reused)', len(jobs), ctx.working_digits, len(reused))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            texts = list(tqdm(pool.map(_node_value_text, jobs), total=len(jobs),
                              desc='Nodes', disable=not progress))
    else:
        texts = [_node_value_text(job) for job in tqdm(jobs, desc='Nodes', disable=not progress)]

    values = reused + tuple(parse_real(text, ctx.working_bits) for text in texts)
    table = NodeValueTable(ctx.working_digits, count, values)
    if table.value(1) >= 0:
        raise NodeTableError(f'f(1/2) must be negative, got {table.value(1)}')
    return table


def persist_node_table(table: NodeValueTable, destination: str | Path) -> None:
    with open(destination, 'w', encoding='ascii', newline='\n') as handle:
        handle.write(table.serialize())


def _header_int(line: str, key: str, source) -> int:
    prefix = f'{key}:'
    if not line.startswith(prefix):
        raise NodeTableParseError(f'{source}: expected "{prefix} <int>", got {line!r}')
    try:
        return int(line[len(prefix):].strip())
    except ValueError:
        raise NodeTableParseError(f'{source}: bad {key} value in {line!r}') from None


def load_node_table(source: str | Path, digits: int | None = None) -> NodeValueTable:
    """Read a node cache.

    Args:
        source: path to the cache
        digits: precision of the run that loads it; a richer table is rounded
            down with a warning, a poorer one is rejected

    Raises:
        NodeTableVersionError, NodeTableTruncatedError, NodeTableParseError
        InsufficientPrecisionError: the table has fewer digits than requested
    """
    lines = Path(source).read_text(encoding='ascii').splitlines()
    if not lines or lines[0].strip() != MAGIC:
        found = lines[0].strip() if lines else '<empty file>'
        raise NodeTableVersionError(f'{source}: expected header {MAGIC!r}, found {found!r}')
    if len(lines) < 3:
        raise NodeTableTruncatedError(f'{source}: header incomplete')

    table_digits = _header_int(lines[1], 'digits', source)
    count = _header_int(lines[2], 'count', source)
    rows = [line for line in lines[3:] if line.strip()]
    if len(rows) < count:
        raise NodeTableTruncatedError(f'{source}: declared count={count} but found {len(rows)} rows')
    if len(rows) > count:
        raise NodeTableParseError(f'{source}: declared count={count} but found {len(rows)} rows')

    bits = digits_to_bits(table_digits)
    values = []
    for expected, row in enumerate(rows, start=1):
        parts = row.split()
        if len(parts) != 2:
            raise NodeTableParseError(f'{source}: malformed row {row!r}')
        try:
            j = int(parts[0])
            value = parse_real(parts[1], bits)
        except ValueError:
            raise NodeTableParseError(f'{source}: malformed row {row!r}') from None
        if j != expected:
            raise NodeTableParseError(f'{source}: expected node {expected}, found {j}')
        values.append(value)

    table = NodeValueTable(table_digits, count, tuple(values))
    if digits is not None and digits != table_digits:
        if digits > table_digits:
            raise InsufficientPrecisionError(
                f'{source} holds {table_digits}-digit values; run needs {digits}')
        logger.warning('Rounding %d-digit node table %s down to %d digits', table_digits, source, digits)
        table = table.rounded(digits)
    return table
