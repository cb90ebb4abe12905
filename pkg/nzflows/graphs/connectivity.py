"""
Edge Connectivity

Local and global edge connectivity of multigraphs via networkx maximum flow
on an aggregated capacity digraph, plus the splitting-off (lifting) searches
used by the reductions: Mader splittable pairs, lifts that keep a graph
k-edge-connected, and 6-splittable pairs with their blocking cuts.
"""

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import networkx as nx
from loguru import logger

from nzflows.domain.graph import Edge, Multigraph
from nzflows.exceptions import (
    CorollaryViolationError,
    InvalidInputError,
    MaderViolationError,
    PreconditionError,
)
from nzflows.graphs.surgery import lift_pair

PairFilter = Callable[[Edge, Edge], bool]

_SOURCE = "source"
_SINK = "sink"


@dataclass(frozen=True)
class CutCertificate:
    """Vertex set X with the edges leaving it; ``size`` is deg(X)."""

    side: FrozenSet[int]
    crossing_edges: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.crossing_edges)

    @classmethod
    def from_side(cls, g: Multigraph, side: Iterable[int]) -> "CutCertificate":
        side = frozenset(side)
        return cls(side=side, crossing_edges=tuple(g.crossing_edges(side)))

    def complement(self, g: Multigraph) -> "CutCertificate":
        return CutCertificate(
            side=frozenset(set(g.vertices) - self.side),
            crossing_edges=self.crossing_edges,
        )

    def is_valid_for(self, g: Multigraph) -> bool:
        return 0 < len(self.side) < g.n and tuple(g.crossing_edges(self.side)) == tuple(
            self.crossing_edges
        )


def _capacity_digraph(g: Multigraph) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(g.vertices)
    for e in g.edges:
        if e.is_loop:
            continue
        for a, b in ((e.tail, e.head), (e.head, e.tail)):
            if digraph.has_edge(a, b):
                digraph[a][b]["capacity"] += 1
            else:
                digraph.add_edge(a, b, capacity=1)
    return digraph


def local_edge_connectivity(g: Multigraph, s: int, t: int) -> int:
    """Maximum number of pairwise edge-disjoint s-t paths."""
    if s == t:
        raise InvalidInputError("local edge connectivity needs two distinct vertices")
    for v in (s, t):
        if not 0 <= v < g.n:
            raise InvalidInputError(f"Unknown vertex {v}")
    return int(nx.maximum_flow_value(_capacity_digraph(g), s, t))


def minimum_st_cut(
    g: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> Tuple[int, CutCertificate]:
    """Minimum cut separating two disjoint vertex sets; the side holds the sources."""
    sources, sinks = set(sources), set(sinks)
    if not sources or not sinks or sources & sinks:
        raise InvalidInputError("sources and sinks must be disjoint and non-empty")
    digraph = _capacity_digraph(g)
    # edges without a capacity attribute are unbounded in networkx
    for s in sources:
        digraph.add_edge(_SOURCE, s)
    for t in sinks:
        digraph.add_edge(t, _SINK)
    value, (reachable, _) = nx.minimum_cut(digraph, _SOURCE, _SINK)
    side = {v for v in reachable if v != _SOURCE}
    return int(value), CutCertificate.from_side(g, side)


def edge_connectivity(g: Multigraph) -> Tuple[int, CutCertificate]:
    """Global minimum cut value with a witnessing side containing vertex 0."""
    if g.n < 2:
        raise InvalidInputError("edge connectivity needs at least two vertices")
    components = g.components()
    if len(components) > 1:
        return 0, CutCertificate.from_side(g, components[0])
    best: Optional[Tuple[int, CutCertificate]] = None
    for t in range(1, g.n):
        value, certificate = minimum_st_cut(g, [0], [t])
        if best is None or value < best[0]:
            best = (value, certificate)
    assert best is not None
    return best


def is_k_edge_connected(g: Multigraph, k: int) -> bool:
    if k <= 0 or g.n <= 1:
        return True
    if any(g.non_loop_degree(v) < k for v in g.vertices):
        return False
    return edge_connectivity(g)[0] >= k


def require_k_edge_connected(g: Multigraph, k: int) -> None:
    """Raise PreconditionError carrying a small cut when ``g`` is not k-edge-connected."""
    if g.n <= 1 or k <= 0:
        return
    value, certificate = edge_connectivity(g)
    if value < k:
        raise PreconditionError(
            f"graph is not {k}-edge-connected (found a cut of size {value})",
            certificate=certificate,
        )


def bridges(g: Multigraph) -> List[int]:
    """Ids of cut-edges, ascending."""
    found = []
    for e in g.edges:
        if e.is_loop:
            continue
        uf = nx.utils.UnionFind(g.vertices)
        for other in g.edges:
            if other.edge_id != e.edge_id:
                uf.union(other.tail, other.head)
        if uf[e.tail] != uf[e.head]:
            found.append(e.edge_id)
    return found


def find_two_edge_cut(g: Multigraph) -> Optional[Tuple[int, int]]:
    """First edge (by id) lying in a 2-edge-cut of a bridgeless graph, with its partner."""
    for e in g.edges:
        if e.is_loop:
            continue
        remaining = bridges(g.without_edges([e.edge_id]))
        if remaining:
            return e.edge_id, remaining[0]
    return None


def two_edge_connected_components(g: Multigraph) -> List[List[int]]:
    """Vertex sets of the 2-edge-connected components, ordered by minimum vertex."""
    cut_edges = set(bridges(g))
    return g.components(eid for eid in g.edge_ids if eid not in cut_edges)


def leaf_2ec_component(g: Multigraph, covered: Iterable[int]) -> List[int]:
    """A 2-edge-connected component of g - covered that is a leaf of its bridge tree.

    Ties go to the component with the lowest minimum vertex id.
    """
    covered = set(covered)
    rest = [v for v in g.vertices if v not in covered]
    if not rest:
        raise InvalidInputError("every vertex is already covered")
    index = {v: i for i, v in enumerate(rest)}
    sub = Multigraph(
        len(rest),
        tuple(
            Edge(e.edge_id, index[e.tail], index[e.head])
            for e in g.edges
            if e.tail in index and e.head in index
        ),
    )
    cut_edges = bridges(sub)
    for component in two_edge_connected_components(sub):
        inside = set(component)
        attached = sum(
            1 for eid in cut_edges if (sub.edge(eid).tail in inside) != (sub.edge(eid).head in inside)
        )
        if attached <= 1:
            return [rest[i] for i in component]
    raise AssertionError("a bridge tree always has a leaf")


# ----------------------------------------------------------------------
# Splitting off
# ----------------------------------------------------------------------


def _pairs_at(g: Multigraph, v: int) -> List[Tuple[Edge, Edge]]:
    return list(itertools.combinations(g.non_loop_incident(v), 2))


def _all_pair_connectivity(g: Multigraph, vertices: List[int]) -> Dict[Tuple[int, int], int]:
    return {
        (s, t): local_edge_connectivity(g, s, t)
        for s, t in itertools.combinations(vertices, 2)
    }


def preserves_local_connectivity(g: Multigraph, v: int, e1: int, e2: int) -> bool:
    """Exhaustive check that lifting (e1, e2) at v keeps every lambda(s, t), s, t != v."""
    others = [u for u in g.vertices if u != v]
    before = _all_pair_connectivity(g, others)
    return _lift_preserves(g, v, e1, e2, before)


def _lift_preserves(
    g: Multigraph, v: int, e1: int, e2: int, before: Dict[Tuple[int, int], int]
) -> bool:
    lifted, step = lift_pair(g, v, e1, e2)
    vmap = step.vertex_map
    for (s, t), value in before.items():
        if local_edge_connectivity(lifted, vmap[s], vmap[t]) != value:
            return False
    return True


def find_splittable_pair(
    g: Multigraph, v: int, candidates: Optional[PairFilter] = None
) -> Tuple[int, int]:
    """First pair at ``v`` (ascending ids) whose lifting preserves all lambda(s, t)."""
    degree = g.non_loop_degree(v)
    if degree == 3 or degree < 2:
        raise PreconditionError(f"vertex {v} has degree {degree}; Mader needs 2 or >= 4")
    cut_edges = set(bridges(g))
    if any(e.edge_id in cut_edges for e in g.non_loop_incident(v)):
        raise PreconditionError(f"vertex {v} is incident with a cut-edge")
    others = [u for u in g.vertices if u != v]
    before = _all_pair_connectivity(g, others)
    for e1, e2 in _pairs_at(g, v):
        if candidates is not None and not candidates(e1, e2):
            continue
        if _lift_preserves(g, v, e1.edge_id, e2.edge_id, before):
            logger.debug(f"splittable pair at {v}: ({e1.edge_id}, {e2.edge_id})")
            return e1.edge_id, e2.edge_id
    raise MaderViolationError(f"no splittable pair verified at vertex {v}")


def _creates_loop(e1: Edge, e2: Edge, v: int) -> bool:
    return e1.other(v) == e2.other(v)


def find_splittable_pair_preserving_k(
    g: Multigraph, v: int, k: int, candidates: Optional[PairFilter] = None
) -> Tuple[int, int]:
    """A pair at ``v`` whose lifting leaves the graph k-edge-connected.

    Pairs that do not create a loop are tried first, each group in ascending ids.
    """
    degree = g.non_loop_degree(v)
    if degree < k + 2:
        raise PreconditionError(f"vertex {v} has degree {degree} < {k + 2}")
    pairs = [
        pair
        for pair in _pairs_at(g, v)
        if candidates is None or candidates(*pair)
    ]
    pairs.sort(key=lambda pair: _creates_loop(pair[0], pair[1], v))
    for e1, e2 in pairs:
        lifted, _ = lift_pair(g, v, e1.edge_id, e2.edge_id)
        if is_k_edge_connected(lifted, k):
            return e1.edge_id, e2.edge_id
    raise CorollaryViolationError(
        f"no lift at vertex {v} keeps the graph {k}-edge-connected"
    )


def is_6_splittable(
    g: Multigraph, s: int, e1: int, e2: int
) -> Tuple[bool, Optional[CutCertificate]]:
    """Whether lifting (e1, e2) at ``s`` leaves no cut below 6 other than the one at ``s``.

    When it does not, the certificate is a side Y of ``g`` with s not in Y and deg(Y) <= 7.
    """
    lifted, step = lift_pair(g, s, e1, e2)
    others = [step.vertex_map[u] for u in g.vertices if u != s]
    inverse = {new: old for old, new in step.vertex_map.items()}
    if len(others) < 2:
        return True, None
    root = others[0]
    for t in others[1:]:
        value, certificate = minimum_st_cut(lifted, [root], [t])
        if value < 6:
            side = {inverse[u] for u in certificate.side}
            if s in side:
                side = set(g.vertices) - side
            return False, CutCertificate.from_side(g, side)
    return True, None


def find_6splittable_pair(
    g: Multigraph,
    v: int,
    excluding: Iterable[int] = (),
    pairs: Optional[Iterable[Tuple[int, int]]] = None,
) -> Union[Tuple[int, int], CutCertificate]:
    """A 6-splittable pair at ``v`` or, when none exists, the first blocking cut.

    ``pairs`` restricts the candidates to the given edge-id pairs at ``v``.
    """
    skip = set(excluding)
    blocking: Optional[CutCertificate] = None
    if pairs is None:
        pairs = [(e1.edge_id, e2.edge_id) for e1, e2 in _pairs_at(g, v)]
    candidates = [(a, b) for a, b in pairs if a not in skip and b not in skip]
    if not candidates:
        raise PreconditionError(f"no candidate pairs at vertex {v}")
    for a, b in candidates:
        ok, certificate = is_6_splittable(g, v, a, b)
        if ok:
            return a, b
        if blocking is None:
            blocking = certificate
    assert blocking is not None
    return blocking


# ----------------------------------------------------------------------
# Minimal connectivity
# ----------------------------------------------------------------------


def maximal_removable_set(g: Multigraph, k: int) -> List[int]:
    """Greedy (ascending ids) maximal F with g - F still k-edge-connected."""
    require_k_edge_connected(g, k)
    removed: List[int] = []
    current = g
    for e in g.edges:
        candidate = current.without_edges([e.edge_id])
        if e.is_loop or is_k_edge_connected(candidate, k):
            current = candidate
            removed.append(e.edge_id)
    return removed


def is_minimally_k_edge_connected(g: Multigraph, k: int) -> bool:
    if not is_k_edge_connected(g, k):
        return False
    return all(
        not is_k_edge_connected(g.without_edges([e.edge_id]), k) for e in g.edges
    )


def count_degree(g: Multigraph, d: int) -> int:
    return sum(1 for v in g.vertices if g.degree(v) == d)


def cai_bound_holds(g: Multigraph) -> bool:
    """Degree-6 count of a minimally 6-edge-connected simple graph: 30*c >= 11n + 85."""
    return 30 * count_degree(g, 6) >= 11 * g.n + 85


def find_small_nontrivial_cut(
    g: Multigraph, bound: int, avoid: int
) -> Optional[CutCertificate]:
    """A side Y with avoid not in Y, |Y| >= 2, |V - Y| >= 2 and deg(Y) <= bound."""
    if g.n < 4:
        return None
    rest = [u for u in g.vertices if u != avoid]
    for a, b in itertools.combinations(rest, 2):
        for c in rest:
            if c in (a, b):
                continue
            value, certificate = minimum_st_cut(g, [a, b], [avoid, c])
            if value <= bound:
                return certificate
    return None
