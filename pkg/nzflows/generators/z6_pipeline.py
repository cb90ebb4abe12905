"""
Z6 Flow Pipeline

Nowhere-zero Z2xZ3 flows of a 2-edge-connected graph:

1. contract edges of 2-edge-cuts until the graph is 3-edge-connected (or a
   single vertex),
2. set loops aside (each later takes every nonzero value),
3. run the dense cover generator on the 3-edge-connected graph,
4. lift pairs until every degree is 3 or 4 and run the cover generator again,
5. lift and suppress the degree-4 vertices to reach a cubic graph and run the
   cubic family,

then pull every flow back to the input graph.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Set, Tuple

from loguru import logger

from nzflows.config import DEFAULT_FLOW_LIMIT
from nzflows.domain.flow import Flow
from nzflows.domain.graph import Edge, Multigraph
from nzflows.domain.trace import ReductionTrace
from nzflows.exceptions import MaderViolationError, NzFlowsError
from nzflows.generators.cover_z6 import (
    Z2XZ3,
    build_anchored_chain_cover,
    cubic_flow_family,
    generate_from_cover,
)
from nzflows.graphs.connectivity import (
    find_splittable_pair,
    find_two_edge_cut,
    is_k_edge_connected,
    require_k_edge_connected,
)
from nzflows.graphs.surgery import (
    contract_edge,
    lift_pair,
    pull_back_flow,
    attach_loop_values,
    strip_loops,
    suppress_or_split_to_max_degree,
    suppress_vertex,
)
from nzflows.utils.bounds import ExactBound


@dataclass(frozen=True)
class Z6Reduction:
    """The contracted graph, its trace from the input, and its loopless core."""

    contracted: Multigraph
    trace: ReductionTrace
    core: Multigraph
    loops: Tuple[Edge, ...]


def contract_two_edge_cuts(g: Multigraph) -> Tuple[Multigraph, ReductionTrace]:
    """Contract 2-edge-cut edges (lowest id first) until 3-edge-connected or n = 1."""
    require_k_edge_connected(g, 2)
    trace = ReductionTrace(g)
    graph = g
    while graph.n > 1:
        found = find_two_edge_cut(graph)
        if found is None:
            break
        graph, step = contract_edge(graph, found[0])
        trace = trace.extended(step, graph)
        logger.debug(f"contracted edge {found[0]} of the 2-edge-cut {found}")
    if trace.steps:
        logger.info(f"contracted {len(trace.steps)} edges; {graph.n} vertices remain")
    return graph, trace


def prepare_z6(g: Multigraph) -> Z6Reduction:
    contracted, trace = contract_two_edge_cuts(g)
    core, loops = strip_loops(contracted)
    return Z6Reduction(contracted, trace, core, tuple(loops))


def reduce_to_cubic(g: Multigraph) -> Tuple[Multigraph, ReductionTrace]:
    """Lift a Mader pair at every degree-4 vertex and suppress it.

    Pairs that would create a loop are tried last.
    """
    trace = ReductionTrace(g)
    graph = g
    while True:
        heavy = [v for v in graph.vertices if graph.non_loop_degree(v) == 4]
        if not heavy:
            return graph, trace
        v = heavy[0]
        try:
            e1, e2 = find_splittable_pair(
                graph, v, candidates=lambda a, b: a.other(v) != b.other(v)
            )
        except MaderViolationError:
            e1, e2 = find_splittable_pair(graph, v)
        graph, step = lift_pair(graph, v, e1, e2)
        trace = trace.extended(step, graph)
        graph, suppress = suppress_vertex(graph, step.vertex_map[v])
        trace = trace.extended(suppress, graph)
        logger.debug(f"vertex {v}: lifted ({e1}, {e2}) and suppressed")


def _dedup(flows: Iterator[Flow], seen: Set, limit: Optional[int]) -> Iterator[Flow]:
    for flow in flows:
        key = flow.key()
        if key in seen:
            continue
        seen.add(key)
        yield flow
        if limit is not None and len(seen) >= limit:
            return


def _pulled_back(flows: Iterator[Flow], trace: ReductionTrace) -> Iterator[Flow]:
    for flow in flows:
        yield pull_back_flow(flow, trace)


def core_flow_family(g: Multigraph, limit: Optional[int] = DEFAULT_FLOW_LIMIT) -> Iterator[Flow]:
    """Dense, {3,4}-degree and cubic branches on a loopless 3-edge-connected graph."""
    seen: Set = set()
    dense_cover = build_anchored_chain_cover(g)
    yield from _dedup(generate_from_cover(g, dense_cover, limit), seen, limit)
    if limit is not None and len(seen) >= limit:
        return

    split, split_trace = suppress_or_split_to_max_degree(g, 3, 4)
    if split_trace.steps:
        split_cover = build_anchored_chain_cover(split)
        yield from _dedup(
            _pulled_back(generate_from_cover(split, split_cover, limit), split_trace),
            seen,
            limit,
        )
        if limit is not None and len(seen) >= limit:
            return

    try:
        cubic, cubic_trace = reduce_to_cubic(split)
    except NzFlowsError as e:
        logger.warning(f"skipping the cubic branch: {e}")
        return
    if not cubic.is_cubic() or not is_k_edge_connected(cubic, 3):
        logger.warning("skipping the cubic branch: reduced graph is not a 3-edge-connected cubic graph")
        return
    trace = split_trace.concat(cubic_trace)
    yield from _dedup(_pulled_back(cubic_flow_family(cubic, limit), trace), seen, limit)


def z6_flow_family(g: Multigraph, limit: Optional[int] = DEFAULT_FLOW_LIMIT) -> Iterator[Flow]:
    """Distinct nowhere-zero Z2xZ3 flows of a 2-edge-connected graph."""
    if limit is not None and limit <= 0:
        return
    reduction = prepare_z6(g)
    if reduction.core.n < 2:
        base: Iterator[Flow] = iter([Flow(Z2XZ3, {})])
    else:
        base = core_flow_family(reduction.core, limit)
    emitted = 0
    for flow in attach_loop_values(base, reduction.loops):
        yield pull_back_flow(flow, reduction.trace)
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def z6_bound(g: Multigraph) -> ExactBound:
    """2^(2(m-n)/9) in general, the larger of that and 2^(n/7) when 3-edge-connected."""
    sparse = ExactBound.power(2, Fraction(2 * (g.m - g.n), 9))
    if g.n >= 2 and is_k_edge_connected(g, 3):
        generic = ExactBound.power(2, Fraction(g.n, 7))
        return generic if Fraction(g.n, 7) >= Fraction(2 * (g.m - g.n), 9) else sparse
    return sparse


def z6_guaranteed_bound(g: Multigraph) -> int:
    return z6_bound(g).ceiling()
