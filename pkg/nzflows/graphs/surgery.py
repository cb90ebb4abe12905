"""
Graph Surgery and Flow Pullback

Every surgery returns the new graph together with a trace step. Surviving
edges keep their ids; new edges take the graph's ``next_edge_id``. Vertices
are relabelled compactly when one disappears, and the step's ``vertex_map``
records old -> new labels.
"""

import itertools
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from loguru import logger

from nzflows.domain.flow import Flow, check_domain
from nzflows.domain.graph import Edge, Multigraph, compact_vertex_map, relabel
from nzflows.domain.group import GroupElem
from nzflows.domain.trace import (
    CliqueExpand,
    ContractEdge,
    DeleteEdge,
    LiftPair,
    ReductionTrace,
    Step,
    SuppressDeg2,
)
from nzflows.exceptions import (
    InvalidInputError,
    PreconditionError,
    PullbackError,
)


def _identity(ids: Iterable[int]) -> Dict[int, int]:
    return {i: i for i in ids}


def _merge_at(g: Multigraph, v: int, e1: int, e2: int) -> Tuple[Multigraph, Edge, Edge, Edge, Dict[int, int]]:
    if e1 == e2:
        raise InvalidInputError("lifting needs two distinct edges")
    first, second = g.edge(e1), g.edge(e2)
    for e in (first, second):
        if not e.touches(v):
            raise InvalidInputError(f"edge {e.edge_id} is not incident with vertex {v}")
        if e.is_loop:
            raise InvalidInputError(f"edge {e.edge_id} is a loop at vertex {v}")
    a, b = first.other(v), second.other(v)
    survivors = [e for e in g.edges if e.edge_id not in (e1, e2)]
    new_id = g.next_edge_id
    isolated = not any(e.touches(v) for e in survivors)
    if isolated:
        vertex_map = compact_vertex_map(g.n, [v])
        new_n = g.n - 1
    else:
        vertex_map = {u: u for u in g.vertices}
        new_n = g.n
    merged = Edge(new_id, a, b)
    graph = relabel(g, vertex_map, new_n, survivors + [merged], new_id + 1)
    return graph, first, second, graph.edge(new_id), vertex_map


def lift_pair(g: Multigraph, v: int, e1: int, e2: int) -> Tuple[Multigraph, LiftPair]:
    """Replace edges (v, a) and (v, b) by one new edge from a to b."""
    graph, first, second, new_edge, vertex_map = _merge_at(g, v, e1, e2)
    step = LiftPair(
        v=v,
        e1=first,
        e2=second,
        new_edge=new_edge,
        vertex_map=vertex_map,
        edge_map=_identity(e.edge_id for e in graph.edges if e.edge_id != new_edge.edge_id),
    )
    return graph, step


def suppress_vertex(g: Multigraph, v: int) -> Tuple[Multigraph, SuppressDeg2]:
    """Remove a degree-2 vertex, joining its two neighbours by one edge."""
    incident = g.incident(v)
    if len(incident) != 2 or any(e.is_loop for e in incident):
        raise PreconditionError(f"vertex {v} does not have two non-loop edges")
    graph, first, second, new_edge, vertex_map = _merge_at(
        g, v, incident[0].edge_id, incident[1].edge_id
    )
    step = SuppressDeg2(
        v=v,
        e1=first,
        e2=second,
        new_edge=new_edge,
        vertex_map=vertex_map,
        edge_map=_identity(e.edge_id for e in graph.edges if e.edge_id != new_edge.edge_id),
    )
    return graph, step


def delete_edge(g: Multigraph, edge_id: int) -> Tuple[Multigraph, DeleteEdge]:
    edge = g.edge(edge_id)
    graph = g.without_edges([edge_id])
    return graph, DeleteEdge(
        edge=edge,
        vertex_map={u: u for u in g.vertices},
        edge_map=_identity(graph.edge_ids),
    )


def contract_edge(
    g: Multigraph, edge_id: int
) -> Tuple[Multigraph, Union[ContractEdge, DeleteEdge]]:
    """Merge the ends of an edge into the smaller label; parallel copies become loops."""
    edge = g.edge(edge_id)
    if edge.is_loop:
        return delete_edge(g, edge_id)
    keep, drop = min(edge.endpoints), max(edge.endpoints)
    compact = compact_vertex_map(g.n, [drop])
    vertex_map = dict(compact)
    vertex_map[drop] = compact[keep]
    survivors = [e for e in g.edges if e.edge_id != edge_id]
    graph = relabel(g, vertex_map, g.n - 1, survivors)
    return graph, ContractEdge(
        edge=edge,
        merged_vertex=compact[keep],
        vertex_map=vertex_map,
        edge_map=_identity(graph.edge_ids),
    )


def clique_expansion(g: Multigraph, u: int) -> Tuple[Multigraph, CliqueExpand]:
    """Delete loops at u, subdivide its edges and replace u by a clique on the new vertices."""
    if g.n < 2:
        raise PreconditionError("clique expansion needs at least two vertices")
    at_u = g.incident(u)
    kept = [e for e in g.edges if not e.touches(u)]
    next_id = g.next_edge_id
    new_edges: List[Edge] = []
    subdivision: Dict[int, int] = {}
    new_labels: List[int] = []
    for i, e in enumerate(x for x in at_u if not x.is_loop):
        x = g.n + i
        new_labels.append(x)
        w = e.other(u)
        new_edges.append(Edge(next_id, x, w) if e.tail == u else Edge(next_id, w, x))
        subdivision[e.edge_id] = next_id
        next_id += 1
    clique_ids = []
    for i in range(len(new_labels)):
        for j in range(i + 1, len(new_labels)):
            new_edges.append(Edge(next_id, new_labels[i], new_labels[j]))
            clique_ids.append(next_id)
            next_id += 1
    total = g.n + len(new_labels)
    full_map = compact_vertex_map(total, [u])
    graph = Multigraph(
        total - 1,
        tuple(
            Edge(e.edge_id, full_map[e.tail], full_map[e.head])
            for e in kept + new_edges
        ),
        next_id,
    )
    return graph, CliqueExpand(
        center=u,
        new_vertices=tuple(full_map[x] for x in new_labels),
        subdivision=subdivision,
        clique_edges=tuple(clique_ids),
        vertex_map={v: full_map[v] for v in g.vertices if v != u},
        edge_map=_identity(e.edge_id for e in kept),
    )


def identify_vertices(
    g: Multigraph, group: Iterable[int]
) -> Tuple[Multigraph, Dict[int, int], int]:
    """Collapse a vertex set to one vertex, dropping the edges inside it.

    Surviving edges keep their ids. Returns the graph, the vertex map and the
    label of the merged vertex.
    """
    members = sorted(set(group))
    if not members:
        raise InvalidInputError("cannot identify an empty vertex set")
    anchor = members[0]
    compact = compact_vertex_map(g.n, members[1:])
    vertex_map = {v: compact[anchor] if v in members else compact[v] for v in g.vertices}
    inside = set(members)
    survivors = [e for e in g.edges if not (e.tail in inside and e.head in inside)]
    graph = relabel(g, vertex_map, g.n - len(members) + 1, survivors)
    return graph, vertex_map, compact[anchor]


def strip_loops(g: Multigraph) -> Tuple[Multigraph, List[Edge]]:
    """Remove all loops, keeping vertex labels and edge ids."""
    loops = g.loops()
    if not loops:
        return g, []
    return g.without_edges(e.edge_id for e in loops), loops


def attach_loop_values(flows: Iterable[Flow], loops: Sequence[Edge]) -> Iterator[Flow]:
    """Extend each flow by every assignment of nonzero values to the loops."""
    for flow in flows:
        nonzero = flow.group.nonzero_elements()
        for values in itertools.product(nonzero, repeat=len(loops)):
            yield flow.merged({loop.edge_id: value for loop, value in zip(loops, values)})


# ----------------------------------------------------------------------
# Traces
# ----------------------------------------------------------------------


def apply_step(g: Multigraph, step: Step) -> Multigraph:
    """Re-run the surgery a step describes on ``g``."""
    if isinstance(step, LiftPair):
        return lift_pair(g, step.v, step.e1.edge_id, step.e2.edge_id)[0]
    if isinstance(step, SuppressDeg2):
        return suppress_vertex(g, step.v)[0]
    if isinstance(step, ContractEdge):
        return contract_edge(g, step.edge.edge_id)[0]
    if isinstance(step, DeleteEdge):
        return delete_edge(g, step.edge.edge_id)[0]
    if isinstance(step, CliqueExpand):
        return clique_expansion(g, step.center)[0]
    raise InvalidInputError(f"Unknown trace step: {step!r}")


def replay_trace(trace: ReductionTrace) -> Multigraph:
    graph = trace.original
    for step in trace.steps:
        graph = apply_step(graph, step)
    return graph


def _pull_back_merge(
    values: Dict[int, GroupElem], step: Union[LiftPair, SuppressDeg2], group
) -> None:
    x = values.pop(step.new_edge.edge_id)
    a = step.e1.other(step.v)
    # the new edge carries x along a -> v -> b
    values[step.e1.edge_id] = x if step.e1.tail == a else group.neg(x)
    values[step.e2.edge_id] = x if step.e2.tail == step.v else group.neg(x)


def _pull_back_contraction(
    values: Dict[int, GroupElem], step: ContractEdge, before: Multigraph, group
) -> None:
    edge = step.edge
    tail = edge.tail
    total = group.zero
    for e in before.incident(tail):
        if e.edge_id == edge.edge_id or e.is_loop:
            continue
        value = values[e.edge_id]
        total = group.add(total, value) if e.head == tail else group.sub(total, value)
    values[edge.edge_id] = total


def pull_back_flow(f: Flow, trace: ReductionTrace) -> Flow:
    """Transport a flow on ``trace.final`` back to ``trace.original``."""
    check_domain(trace.final, f)
    group = f.group
    values: Dict[int, GroupElem] = dict(f.values)
    for index in range(len(trace.steps) - 1, -1, -1):
        step = trace.steps[index]
        if isinstance(step, (LiftPair, SuppressDeg2)):
            _pull_back_merge(values, step, group)
        elif isinstance(step, ContractEdge):
            _pull_back_contraction(values, step, trace.graphs[index], group)
        else:
            raise PullbackError(f"cannot pull flows back through a {step.kind} step")
    return Flow(group, values)


def suppress_or_split_to_max_degree(
    g: Multigraph, k: int, dmax: int
) -> Tuple[Multigraph, ReductionTrace]:
    """Lift pairs at high-degree vertices, keeping k-edge-connectivity, until degree <= dmax."""
    from nzflows.graphs.connectivity import (
        find_splittable_pair_preserving_k,
        require_k_edge_connected,
    )

    if dmax < k:
        raise InvalidInputError(f"dmax={dmax} must be at least k={k}")
    require_k_edge_connected(g, k)
    trace = ReductionTrace(g)
    graph = g
    while True:
        heavy = [v for v in graph.vertices if graph.non_loop_degree(v) > dmax]
        if not heavy:
            break
        v = heavy[0]
        if graph.non_loop_degree(v) < k + 2:
            raise PreconditionError(
                f"vertex {v} of degree {graph.non_loop_degree(v)} cannot be reduced below {dmax + 1} keeping {k}-edge-connectivity"
            )
        e1, e2 = find_splittable_pair_preserving_k(graph, v, k)
        graph, step = lift_pair(graph, v, e1, e2)
        trace = trace.extended(step, graph)
        logger.debug(f"lifted ({e1}, {e2}) at vertex {v}")
    if trace.steps:
        logger.info(f"degree reduction applied {len(trace.steps)} lifts (dmax={dmax})")
    return graph, trace
