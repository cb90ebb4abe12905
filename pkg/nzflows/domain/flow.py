"""
Group-Valued Flows

A flow maps every edge id of its graph to a group element, read against the
edge's reference direction (traversing head -> tail negates the value).
Z3 flows that are nowhere-zero double as orientations: value 1 keeps the
reference direction, value 2 reverses it.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Tuple

from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupElem, GroupSpec
from nzflows.exceptions import DomainMismatchError, InvalidInputError

Z3 = GroupSpec.cyclic(3)

# edge id -> +1 (reference direction) or -1 (reversed)
Orientation = Dict[int, int]


@dataclass(frozen=True)
class Flow:
    """Edge-indexed assignment of group elements."""

    group: GroupSpec
    values: Mapping[int, GroupElem]

    def __post_init__(self) -> None:
        normalized = {
            int(eid): self.group.normalize(value) for eid, value in self.values.items()
        }
        object.__setattr__(self, "values", normalized)

    def __hash__(self) -> int:
        return hash((self.group, self.key()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Flow):
            return NotImplemented
        return self.group == other.group and self.values == other.values

    @property
    def edge_ids(self) -> List[int]:
        return sorted(self.values)

    def key(self) -> Tuple[Tuple[int, GroupElem], ...]:
        """Canonical serialization (ascending edge id) used for distinctness."""
        return tuple((eid, self.values[eid]) for eid in sorted(self.values))

    def value(self, edge_id: int) -> GroupElem:
        try:
            return self.values[edge_id]
        except KeyError:
            raise InvalidInputError(f"Flow has no value on edge {edge_id}") from None

    def restrict(self, edge_ids: Iterable[int]) -> "Flow":
        return Flow(self.group, {eid: self.values[eid] for eid in edge_ids})

    def merged(self, other: Mapping[int, GroupElem]) -> "Flow":
        """Union with values on further edges; shared edges must agree."""
        combined = dict(self.values)
        for eid, value in other.items():
            value = self.group.normalize(value)
            if eid in combined and combined[eid] != value:
                raise InvalidInputError(f"Conflicting values on edge {eid}")
            combined[eid] = value
        return Flow(self.group, combined)

    def with_value(self, edge_id: int, value: GroupElem) -> "Flow":
        combined = dict(self.values)
        combined[edge_id] = value
        return Flow(self.group, combined)

    def zero_edges(self) -> List[int]:
        return [eid for eid in self.edge_ids if self.group.is_zero(self.values[eid])]

    def component(self, index: int) -> Dict[int, int]:
        """One residue coordinate, e.g. the Z2 or Z3 part of a Z2xZ3 flow."""
        return {eid: value[index] for eid, value in self.values.items()}


def check_domain(g: Multigraph, f: Flow) -> None:
    if set(f.values) != g.edge_id_set:
        extra = sorted(set(f.values) - g.edge_id_set)
        missing = sorted(g.edge_id_set - set(f.values))
        raise DomainMismatchError(
            f"Flow edge set differs from graph: missing {missing}, extra {extra}"
        )


def net_inflow(g: Multigraph, f: Flow) -> List[GroupElem]:
    """Per vertex: sum over edges entering minus sum over edges leaving."""
    group = f.group
    totals = [group.zero for _ in g.vertices]
    for e in g.edges:
        if e.is_loop:
            continue
        value = f.values[e.edge_id]
        totals[e.head] = group.add(totals[e.head], value)
        totals[e.tail] = group.sub(totals[e.tail], value)
    return totals


def validate_flow(g: Multigraph, f: Flow) -> bool:
    """True iff Kirchhoff's law holds at every vertex of ``g``."""
    check_domain(g, f)
    return all(f.group.is_zero(total) for total in net_inflow(g, f))


def is_nowhere_zero(f: Flow) -> bool:
    return not any(f.group.is_zero(value) for value in f.values.values())


def negate_edge(g: Multigraph, f: Flow, edge_id: int) -> Tuple[Multigraph, Flow]:
    """Reverse an edge's stored direction and negate its value accordingly."""
    return (
        g.reversed_edge(edge_id),
        f.with_value(edge_id, f.group.neg(f.value(edge_id))),
    )


def orientation_to_flow(orientation: Mapping[int, int]) -> Flow:
    values = {}
    for eid, sign in orientation.items():
        if sign not in (1, -1):
            raise InvalidInputError(f"Orientation sign must be +1 or -1, got {sign}")
        values[eid] = (1,) if sign == 1 else (2,)
    return Flow(Z3, values)


def flow_to_orientation(f: Flow) -> Orientation:
    if f.group.moduli != (3,):
        raise InvalidInputError(f"Orientations correspond to Z3 flows, not {f.group}")
    orientation: Orientation = {}
    for eid in f.edge_ids:
        residue = f.values[eid][0]
        if residue == 0:
            raise InvalidInputError(f"Zero value on edge {eid}; not an orientation")
        orientation[eid] = 1 if residue == 1 else -1
    return orientation


def orientation_key(orientation: Mapping[int, int]) -> Tuple[Tuple[int, int], ...]:
    return tuple((eid, orientation[eid]) for eid in sorted(orientation))
