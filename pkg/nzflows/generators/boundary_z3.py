"""
Boundaries, Beta-Flows and the Orientation Extension Search

Nowhere-zero Z3-flows are handled as orientations: each vertex has the same
in- and out-degree modulo 3. A boundary beta asks instead for
out-degree minus in-degree congruent to beta(v). Orientations are maps edge
id -> +1 (reference direction) / -1 (reversed).
"""

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from loguru import logger

from nzflows.config import (
    EXHAUSTIVE_CUT_SCAN_MAX_VERTICES,
    SEARCH_FREE_EDGE_CAP,
    SEARCH_NODE_BUDGET,
)
from nzflows.domain.flow import Orientation
from nzflows.domain.graph import Edge, Multigraph
from nzflows.exceptions import (
    DomainMismatchError,
    InstanceTooLargeError,
    InvalidInputError,
    PreconditionError,
)
from nzflows.graphs.connectivity import is_k_edge_connected


@dataclass(frozen=True)
class Boundary:
    """Vertex residues mod 3 summing to 0."""

    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        normalized = tuple(int(x) % 3 for x in self.values)
        if sum(normalized) % 3 != 0:
            raise InvalidInputError(f"boundary values sum to {sum(normalized) % 3}, not 0 mod 3")
        object.__setattr__(self, "values", normalized)

    @classmethod
    def zero(cls, n: int) -> "Boundary":
        return cls((0,) * n)

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[int, int]) -> "Boundary":
        return cls(tuple(values.get(v, 0) for v in range(n)))

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def total(self, vertices: Iterable[int]) -> int:
        return sum(self.values[v] for v in vertices) % 3

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class OrientationState:
    """Edges already oriented, and the free edges left to orient (ascending ids)."""

    fixed: Mapping[int, int]
    free: Tuple[int, ...]

    @classmethod
    def from_fixed(cls, g: Multigraph, fixed: Mapping[int, int]) -> "OrientationState":
        unknown = set(fixed) - g.edge_id_set
        if unknown:
            raise DomainMismatchError(f"fixed edges not in graph: {sorted(unknown)}")
        for eid, sign in fixed.items():
            if sign not in (1, -1):
                raise InvalidInputError(f"orientation sign must be +1 or -1, got {sign} on edge {eid}")
        free = tuple(eid for eid in g.edge_ids if eid not in fixed)
        return cls(dict(fixed), free)


@dataclass(frozen=True)
class CorollaryForm:
    """Boundary and preorientation after reversing one edge at a degree-6 vertex."""

    beta: Boundary
    preorientation: Mapping[int, int]
    reversed_edge: Optional[int] = None


def _direction_out(e: Edge, sign: int, v: int) -> bool:
    """Whether edge e, oriented by ``sign``, leaves v."""
    return (sign == 1) == (e.tail == v)


def out_minus_in(g: Multigraph, orientation: Mapping[int, int]) -> List[int]:
    """deg+(u) - deg-(u) over the oriented edges, per vertex (loops contribute 0)."""
    totals = [0] * g.n
    for eid, sign in orientation.items():
        e = g.edge(eid)
        if e.is_loop:
            continue
        source, target = (e.tail, e.head) if sign == 1 else (e.head, e.tail)
        totals[source] += 1
        totals[target] -= 1
    return totals


def sigma(g: Multigraph, beta: Boundary, vertices: Iterable[int]) -> int:
    side = set(vertices)
    if not side or len(side) >= g.n:
        raise InvalidInputError("sigma needs a non-empty proper vertex subset")
    even = g.cut_degree(side) % 2 == 0
    if beta.total(side) == 0:
        return 4 if even else 7
    return 6 if even else 5


def verify_beta_flow(g: Multigraph, orientation: Mapping[int, int], beta: Boundary) -> bool:
    if set(orientation) != g.edge_id_set:
        raise DomainMismatchError("orientation must cover every edge of the graph")
    totals = out_minus_in(g, orientation)
    return all((totals[v] - beta[v]) % 3 == 0 for v in g.vertices)


def boundary_from_oriented_edges(g: Multigraph, oriented: Mapping[int, int]) -> Boundary:
    """beta(u) = deg-(u) - deg+(u) over the given edges.

    A beta-flow on the rest of the graph together with these edges is a
    nowhere-zero Z3-flow.
    """
    totals = out_minus_in(g, oriented)
    return Boundary(tuple(-t for t in totals))


def balanced_preorientation(g: Multigraph, v: int) -> Orientation:
    """First orientation of delta(v) (ascending ids, out-edges first) with deg+ - deg- = 0 mod 3."""
    at_v = g.non_loop_incident(v)
    d = len(at_v)
    out = (2 * d) % 3
    if out > d:
        raise PreconditionError(f"vertex {v} of degree {d} has no balanced orientation")
    pre: Orientation = {}
    for i, e in enumerate(at_v):
        leaving = i < out
        pre[e.edge_id] = 1 if leaving == (e.tail == v) else -1
    return pre


# ----------------------------------------------------------------------
# Search
# ----------------------------------------------------------------------


class _Search:
    def __init__(self, g: Multigraph, beta: Boundary, state: OrientationState, node_budget: Optional[int]):
        self.g = g
        self.beta = beta
        self.state = state
        self.node_budget = node_budget
        self.nodes = 0
        self.excess = out_minus_in(g, state.fixed)
        self.remaining = [0] * g.n
        for eid in state.free:
            e = g.edge(eid)
            if not e.is_loop:
                self.remaining[e.tail] += 1
                self.remaining[e.head] += 1

    def _feasible(self, u: int) -> bool:
        needed = (self.beta[u] - self.excess[u]) % 3
        r = self.remaining[u]
        if r == 0:
            return needed == 0
        if r == 1:
            return needed != 0
        return True

    def run(self) -> Iterator[Orientation]:
        if not all(self._feasible(u) for u in self.g.vertices):
            return
        current: Dict[int, int] = dict(self.state.fixed)
        yield from self._extend(0, current)

    def _extend(self, index: int, current: Dict[int, int]) -> Iterator[Orientation]:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise InstanceTooLargeError(
                f"orientation search exceeded {self.node_budget} nodes"
            )
        if index == len(self.state.free):
            yield dict(current)
            return
        eid = self.state.free[index]
        e = self.g.edge(eid)
        for sign in (1, -1):
            current[eid] = sign
            if e.is_loop:
                yield from self._extend(index + 1, current)
                continue
            source, target = (e.tail, e.head) if sign == 1 else (e.head, e.tail)
            self.excess[source] += 1
            self.excess[target] -= 1
            self.remaining[e.tail] -= 1
            self.remaining[e.head] -= 1
            if self._feasible(e.tail) and self._feasible(e.head):
                yield from self._extend(index + 1, current)
            self.excess[source] -= 1
            self.excess[target] += 1
            self.remaining[e.tail] += 1
            self.remaining[e.head] += 1
        del current[eid]


def iter_orientation_extensions(
    g: Multigraph,
    beta: Boundary,
    state: OrientationState,
    free_cap: Optional[int] = SEARCH_FREE_EDGE_CAP,
    node_budget: Optional[int] = SEARCH_NODE_BUDGET,
) -> Iterator[Orientation]:
    """Every beta-flow extending ``state.fixed``; ascending ids, reference direction first."""
    if free_cap is not None and len(state.free) > free_cap:
        raise InstanceTooLargeError(
            f"{len(state.free)} free edges exceed the enumeration cap of {free_cap}"
        )
    return _Search(g, beta, state, node_budget).run()


def extend_orientation_search(
    g: Multigraph,
    beta: Boundary,
    state: OrientationState,
    node_budget: Optional[int] = SEARCH_NODE_BUDGET,
) -> Optional[Orientation]:
    """The first extension found by the backtracking search, or None."""
    search = iter_orientation_extensions(g, beta, state, free_cap=None, node_budget=node_budget)
    return next(search, None)


# ----------------------------------------------------------------------
# Extension hypotheses
# ----------------------------------------------------------------------


def check_extend_hypotheses(
    g: Multigraph,
    beta: Boundary,
    v: int,
    max_vertices: int = EXHAUSTIVE_CUT_SCAN_MAX_VERTICES,
) -> Tuple[bool, Optional[FrozenSet[int]]]:
    """deg(X) >= sigma(X) for all proper X containing v with |X| >= 2, and deg(v) <= sigma({v}).

    Returns the first failing set as witness.
    """
    if g.n > max_vertices:
        raise InstanceTooLargeError(
            f"exhaustive scan over {g.n} vertices is too large; use corollary form"
        )
    if g.n < 2:
        return True, None
    if g.non_loop_degree(v) > sigma(g, beta, [v]):
        return False, frozenset([v])
    others = [u for u in g.vertices if u != v]
    for size in range(1, len(others)):
        for chosen in itertools.combinations(others, size):
            side = frozenset((v,) + chosen)
            if g.cut_degree(side) < sigma(g, beta, side):
                return False, side
    return True, None


def corollary_form(
    g: Multigraph, beta: Boundary, v: int, preorientation: Mapping[int, int]
) -> CorollaryForm:
    """Reverse the first edge at a degree-6 vertex so the extension theorem's degree condition holds."""
    d = g.non_loop_degree(v)
    if d not in (6, 7):
        raise PreconditionError(f"corollary form needs deg(v) in {{6, 7}}, got {d}")
    if beta[v] != 0:
        raise PreconditionError("corollary form needs beta(v) = 0")
    if d == 7:
        return CorollaryForm(beta, dict(preorientation))
    e = g.non_loop_incident(v)[0]
    w = e.other(v)
    values = list(beta.values)
    if _direction_out(e, preorientation[e.edge_id], v):
        values[v] -= 2
        values[w] += 2
    else:
        values[v] += 2
        values[w] -= 2
    pre = dict(preorientation)
    pre[e.edge_id] = -pre[e.edge_id]
    return CorollaryForm(Boundary(tuple(values)), pre, e.edge_id)


def corollary_hypotheses_hold(g: Multigraph, beta: Boundary, v: int) -> bool:
    """6-edge-connected, deg(v) <= 7 and beta(v) = 0."""
    return is_k_edge_connected(g, 6) and g.non_loop_degree(v) <= 7 and beta[v] == 0


def hypotheses_hold(g: Multigraph, beta: Boundary, v: int) -> bool:
    """Exhaustive check when small enough, the corollary form otherwise."""
    if g.n <= EXHAUSTIVE_CUT_SCAN_MAX_VERTICES:
        ok, witness = check_extend_hypotheses(g, beta, v)
        if not ok:
            logger.debug(f"extension hypothesis fails on {sorted(witness or ())}")
        return ok
    return corollary_hypotheses_hold(g, beta, v)
