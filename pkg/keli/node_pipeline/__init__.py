from .node_table import (
    MAGIC,
    NodeValueTable,
    build_node_table,
    load_node_table,
    node_point,
    persist_node_table,
)

__all__ = [
    'MAGIC',
    'NodeValueTable',
    'build_node_table',
    'load_node_table',
    'node_point',
    'persist_node_table',
]
