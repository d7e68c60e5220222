from .base import KeliArgumentParser, Stage
from .config import RunConfig, resolve_threads
from .errors import KeliError, UsageError
from .table_export_mixin import FORMATS, TableExportMixin

__all__ = [
    'Stage',
    'KeliArgumentParser',
    'RunConfig',
    'resolve_threads',
    'TableExportMixin',
    'FORMATS',
    'KeliError',
    'UsageError',
]
