"""
Multigraph Value Type

Vertices are ids 0..n-1. Edges carry stable integer ids and a reference
orientation (tail -> head); loops have tail == head and parallel edges are
distinct records. Values are immutable: every modification returns a new graph.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from nzflows.exceptions import InvalidInputError


@dataclass(frozen=True, order=True)
class Edge:
    """One edge record; orientation tail -> head is the reference direction."""

    edge_id: int
    tail: int
    head: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    @property
    def endpoints(self) -> Tuple[int, int]:
        return (self.tail, self.head)

    def other(self, v: int) -> int:
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise InvalidInputError(f"Vertex {v} is not an end of edge {self.edge_id}")

    def touches(self, v: int) -> bool:
        return v == self.tail or v == self.head

    def direction_from(self, v: int) -> int:
        """+1 when the edge leaves ``v`` in its reference direction, else -1."""
        if self.is_loop:
            raise InvalidInputError(f"Edge {self.edge_id} is a loop")
        if v == self.tail:
            return 1
        if v == self.head:
            return -1
        raise InvalidInputError(f"Vertex {v} is not an end of edge {self.edge_id}")

    def reversed(self) -> "Edge":
        return Edge(self.edge_id, self.head, self.tail)


@dataclass(frozen=True)
class Multigraph:
    """Loop/parallel-edge graph with stable edge ids.

    ``next_edge_id`` is the smallest id a surgery may hand out; it never
    decreases along a chain of surgeries, so ids are not reused.
    """

    n: int
    edges: Tuple[Edge, ...]
    next_edge_id: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInputError(f"Vertex count must be non-negative, got {self.n}")
        edges = tuple(sorted(self.edges, key=lambda e: e.edge_id))
        seen = set()
        for e in edges:
            if e.edge_id < 0:
                raise InvalidInputError(f"Negative edge id {e.edge_id}")
            if e.edge_id in seen:
                raise InvalidInputError(f"Duplicate edge id {e.edge_id}")
            seen.add(e.edge_id)
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise InvalidInputError(
                    f"Edge {e.edge_id} ({e.tail}, {e.head}) out of range for n={self.n}"
                )
        floor = edges[-1].edge_id + 1 if edges else 0
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "next_edge_id", max(self.next_edge_id, floor))

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Multigraph":
        """Build a graph whose edge ids follow the order of ``pairs``."""
        return cls(n, tuple(Edge(i, t, h) for i, (t, h) in enumerate(pairs)))

    def replace_edges(self, edges: Iterable[Edge]) -> "Multigraph":
        return Multigraph(self.n, tuple(edges), self.next_edge_id)

    def without_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        drop = set(edge_ids)
        missing = drop - self.edge_id_set
        if missing:
            raise InvalidInputError(f"Unknown edge ids: {sorted(missing)}")
        return self.replace_edges(e for e in self.edges if e.edge_id not in drop)

    def restrict(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Spanning subgraph on the given edges (ids kept)."""
        keep = set(edge_ids)
        return self.replace_edges(e for e in self.edges if e.edge_id in keep)

    def reversed_edge(self, edge_id: int) -> "Multigraph":
        target = self.edge(edge_id)
        return self.replace_edges(
            target.reversed() if e.edge_id == edge_id else e for e in self.edges
        )

    def with_new_edge(self, tail: int, head: int) -> Tuple["Multigraph", Edge]:
        new = Edge(self.next_edge_id, tail, head)
        graph = Multigraph(self.n, self.edges + (new,), self.next_edge_id + 1)
        return graph, new

    # ------------------------------------------------------------------
    # Indexes
    # ------------------------------------------------------------------

    @cached_property
    def _by_id(self) -> Dict[int, Edge]:
        return {e.edge_id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> Tuple[Tuple[Edge, ...], ...]:
        buckets: List[List[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            buckets[e.tail].append(e)
            if not e.is_loop:
                buckets[e.head].append(e)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def edge_id_set(self) -> FrozenSet[int]:
        return frozenset(self._by_id)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_ids(self) -> List[int]:
        return [e.edge_id for e in self.edges]

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self._by_id

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise InvalidInputError(f"Unknown edge id {edge_id}") from None

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidInputError(f"Unknown vertex {v} (n={self.n})")

    def incident(self, v: int) -> Tuple[Edge, ...]:
        """Edges at ``v`` in ascending id order; a loop is listed once."""
        self._check_vertex(v)
        return self._incidence[v]

    def non_loop_incident(self, v: int) -> List[Edge]:
        return [e for e in self.incident(v) if not e.is_loop]

    def degree(self, v: int) -> int:
        """Degree with loops counted twice."""
        return sum(2 if e.is_loop else 1 for e in self.incident(v))

    def non_loop_degree(self, v: int) -> int:
        return sum(1 for e in self.incident(v) if not e.is_loop)

    def degrees(self) -> List[int]:
        return [self.degree(v) for v in self.vertices]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbors(self, v: int) -> List[int]:
        return sorted({e.other(v) for e in self.incident(v) if not e.is_loop})

    def edges_between(self, u: int, w: int) -> List[Edge]:
        return [e for e in self.incident(u) if not e.is_loop and e.other(u) == w]

    def multiplicity(self, u: int, w: int) -> int:
        return len(self.edges_between(u, w))

    def loops(self) -> List[Edge]:
        return [e for e in self.edges if e.is_loop]

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def is_simple(self) -> bool:
        pairs = set()
        for e in self.edges:
            if e.is_loop:
                return False
            key = (min(e.endpoints), max(e.endpoints))
            if key in pairs:
                return False
            pairs.add(key)
        return True

    def is_cubic(self) -> bool:
        return self.n > 0 and all(d == 3 for d in self.degrees())

    # ------------------------------------------------------------------
    # Cuts and components
    # ------------------------------------------------------------------

    def crossing_edges(self, side: Iterable[int]) -> List[int]:
        """Ids of edges with exactly one end in ``side``."""
        inside = set(side)
        return [
            e.edge_id for e in self.edges if (e.tail in inside) != (e.head in inside)
        ]

    def cut_degree(self, side: Iterable[int]) -> int:
        return len(self.crossing_edges(side))

    def components(self, edge_ids: Optional[Iterable[int]] = None) -> List[List[int]]:
        """Vertex sets of connected components, each sorted, ordered by minimum."""
        uf = nx.utils.UnionFind(range(self.n))
        chosen = self.edges if edge_ids is None else [self.edge(i) for i in edge_ids]
        for e in chosen:
            uf.union(e.tail, e.head)
        groups: Dict[int, List[int]] = {}
        for v in self.vertices:
            groups.setdefault(uf[v], []).append(v)
        return sorted(groups.values(), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def cycle_rank(self, include_loops: bool = True) -> int:
        loops = 0 if include_loops else len(self.loops())
        return self.m - loops - self.n + len(self.components())

    # ------------------------------------------------------------------
    # Interop
    # ------------------------------------------------------------------

    def to_networkx(self) -> nx.MultiGraph:
        """Undirected networkx view keyed by edge id."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.tail, e.head, key=e.edge_id)
        return graph

    def pairs(self) -> List[Tuple[int, int]]:
        return [(e.tail, e.head) for e in self.edges]


def relabel(
    graph: Multigraph,
    vertex_map: Mapping[int, int],
    new_n: int,
    edges: Sequence[Edge],
    next_edge_id: Optional[int] = None,
) -> Multigraph:
    """Rebuild ``edges`` (given in old labels) under ``vertex_map``."""
    mapped = tuple(
        Edge(e.edge_id, vertex_map[e.tail], vertex_map[e.head]) for e in edges
    )
    return Multigraph(
        new_n,
        mapped,
        graph.next_edge_id if next_edge_id is None else next_edge_id,
    )


def compact_vertex_map(n: int, removed: Iterable[int]) -> Dict[int, int]:
    """Map surviving vertices onto 0..n-|removed|-1 preserving order."""
    gone = set(removed)
    mapping: Dict[int, int] = {}
    for v in range(n):
        if v not in gone:
            mapping[v] = len(mapping)
    return mapping
