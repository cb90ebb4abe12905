"""
Breadth-first path searches over edge ids.

Paths are lists of (edge_id, direction) with direction +1 when the edge is
traversed tail -> head. Neighbours are explored in ascending edge id order
so results are reproducible.
"""

from collections import deque
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from nzflows.domain.graph import Multigraph

Step = Tuple[int, int]


def undirected_path(
    g: Multigraph,
    source: int,
    target: int,
    edge_ids: Optional[Iterable[int]] = None,
) -> Optional[List[Step]]:
    """Shortest path using only ``edge_ids`` (all edges when None)."""
    allowed = None if edge_ids is None else set(edge_ids)
    if source == target:
        return []
    parent: Dict[int, Tuple[int, int, int]] = {source: (-1, -1, 0)}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for e in g.incident(u):
            if e.is_loop or (allowed is not None and e.edge_id not in allowed):
                continue
            w = e.other(u)
            if w in parent:
                continue
            parent[w] = (u, e.edge_id, 1 if e.tail == u else -1)
            if w == target:
                return _unwind(parent, source, target)
            queue.append(w)
    return None


def directed_path(
    arcs: Mapping[int, Tuple[int, int]], source: int, target: int
) -> Optional[List[int]]:
    """Shortest directed path over ``arcs`` (edge id -> (from, to)); returns edge ids."""
    if source == target:
        return []
    outgoing: Dict[int, List[Tuple[int, int]]] = {}
    for eid in sorted(arcs):
        a, b = arcs[eid]
        outgoing.setdefault(a, []).append((eid, b))
    parent: Dict[int, Tuple[int, int]] = {source: (-1, -1)}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for eid, w in outgoing.get(u, []):
            if w in parent:
                continue
            parent[w] = (u, eid)
            if w == target:
                path = []
                node = target
                while node != source:
                    prev, via = parent[node]
                    path.append(via)
                    node = prev
                return path[::-1]
            queue.append(w)
    return None


def _unwind(parent: Dict[int, Tuple[int, int, int]], source: int, target: int) -> List[Step]:
    path: List[Step] = []
    node = target
    while node != source:
        prev, eid, direction = parent[node]
        path.append((eid, direction))
        node = prev
    return path[::-1]


def shortest_cycle(g: Multigraph) -> Optional[List[Step]]:
    """A shortest non-loop cycle; ties go to the lowest closing edge id.

    The cycle is returned as a closed walk starting at its lowest vertex and
    leaving it along its lower-id cycle edge.
    """
    best: Optional[List[Step]] = None
    for e in g.edges:
        if e.is_loop:
            continue
        rest = [x for x in g.edge_ids if x != e.edge_id]
        back = undirected_path(g, e.head, e.tail, rest)
        if back is None:
            continue
        cycle = [(e.edge_id, 1)] + back
        if best is None or len(cycle) < len(best):
            best = cycle
    if best is None:
        return None
    return normalize_cycle(g, best)


def cycle_vertices(g: Multigraph, cycle: List[Step]) -> List[int]:
    """Start vertex of each step of a closed walk."""
    vertices = []
    for eid, direction in cycle:
        e = g.edge(eid)
        vertices.append(e.tail if direction == 1 else e.head)
    return vertices


def normalize_cycle(g: Multigraph, cycle: List[Step]) -> List[Step]:
    """Rotate/reverse a closed walk to start at its lowest vertex along the lower-id edge."""
    starts = cycle_vertices(g, cycle)
    low = min(starts)
    i = starts.index(low)
    forward = cycle[i:] + cycle[:i]
    # the reverse walk leaves ``low`` along the edge that enters it in ``forward``
    backward = [(eid, -direction) for eid, direction in reversed(forward)]
    return forward if forward[0][0] <= backward[0][0] else backward


def arcs_of(g: Multigraph, walk: Iterable[Step]) -> Dict[int, Tuple[int, int]]:
    """Directed arcs (from, to) of a walk."""
    arcs = {}
    for eid, direction in walk:
        e = g.edge(eid)
        arcs[eid] = (e.tail, e.head) if direction == 1 else (e.head, e.tail)
    return arcs
