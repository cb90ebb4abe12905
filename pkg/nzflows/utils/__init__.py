"""
Utils package for nzflows.

- from nzflows.utils import guaranteed_bound, parse_graph, serialize_flow
"""

from .bounds import ExactBound, bound_expression, ceil_pow2, guaranteed_bound
from .formats import (
    graph_digest,
    parse_flow_line,
    parse_graph,
    read_graph,
    serialize_flow,
    serialize_graph,
    serialize_orientation,
)

__all__ = [
    "ExactBound",
    "bound_expression",
    "ceil_pow2",
    "guaranteed_bound",
    "graph_digest",
    "parse_flow_line",
    "parse_graph",
    "read_graph",
    "serialize_flow",
    "serialize_graph",
    "serialize_orientation",
]
