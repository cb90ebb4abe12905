"""
Reduction Traces

A trace records the surgeries applied to a graph together with every
intermediate graph, so flows on the reduced graph can be pulled back and the
reduction can be replayed.
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple, Union

from nzflows.domain.graph import Edge, Multigraph
from nzflows.exceptions import InvalidInputError


@dataclass(frozen=True)
class LiftPair:
    """Edges e1 = (v, a) and e2 = (v, b) replaced by new_edge = (a, b)."""

    v: int
    e1: Edge
    e2: Edge
    new_edge: Edge
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, int]

    @property
    def kind(self) -> str:
        return "lift"


@dataclass(frozen=True)
class SuppressDeg2:
    """Degree-two vertex v removed; its two edges merged into new_edge."""

    v: int
    e1: Edge
    e2: Edge
    new_edge: Edge
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, int]

    @property
    def kind(self) -> str:
        return "suppress"


@dataclass(frozen=True)
class ContractEdge:
    edge: Edge
    merged_vertex: int
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, int]

    @property
    def kind(self) -> str:
        return "contract"


@dataclass(frozen=True)
class DeleteEdge:
    edge: Edge
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, int]

    @property
    def kind(self) -> str:
        return "delete"


@dataclass(frozen=True)
class CliqueExpand:
    """Center removed; each of its edges subdivided, new vertices joined by a clique."""

    center: int
    new_vertices: Tuple[int, ...]
    subdivision: Mapping[int, int]
    clique_edges: Tuple[int, ...]
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, int]

    @property
    def kind(self) -> str:
        return "clique_expand"


Step = Union[LiftPair, SuppressDeg2, ContractEdge, DeleteEdge, CliqueExpand]


@dataclass(frozen=True)
class ReductionTrace:
    original: Multigraph
    steps: Tuple[Step, ...] = ()
    graphs: Tuple[Multigraph, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.graphs:
            object.__setattr__(self, "graphs", (self.original,))

    @property
    def final(self) -> Multigraph:
        return self.graphs[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, step: Step, graph: Multigraph) -> "ReductionTrace":
        return ReductionTrace(self.original, self.steps + (step,), self.graphs + (graph,))

    def concat(self, other: "ReductionTrace") -> "ReductionTrace":
        """Append a trace whose original graph is this trace's final graph."""
        if other.original != self.final:
            raise InvalidInputError("Trace to append does not start at this trace's final graph")
        return ReductionTrace(
            self.original, self.steps + other.steps, self.graphs + other.graphs[1:]
        )

    def vertex_image(self, v: int) -> Optional[int]:
        """Label of original vertex ``v`` in the final graph, None if removed."""
        current: Optional[int] = v
        for step in self.steps:
            if current is None:
                return None
            current = step.vertex_map.get(current)
        return current

    def kinds(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for step in self.steps:
            counts[step.kind] = counts.get(step.kind, 0) + 1
        return counts
