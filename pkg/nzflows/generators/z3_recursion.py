"""
Recursive Z3-Flow Generator

Extends a balanced orientation of the edges at a distinguished vertex v to
many nowhere-zero Z3-flows of a 6-edge-connected graph with maximum degree at
most 7. Each call picks the first applicable reduction:

- three ways to split at a degree-6 vertex s != v,
- a small cut (deg(Y) <= 7, both sides of size >= 2),
- a direct construction on at most 14 vertices,
- a degree-6 vertex s != v (settled by a small cut or three splits),
- a double edge away from v whose deletion keeps 6-edge-connectivity,
- a large removable edge set (free orientations plus the extension search), or
  else a degree-6 vertex located through the minimal 6-edge-connected subgraph.

Loops are set aside at every node and take both orientations.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Set, Tuple

from loguru import logger

from nzflows.config import DEFAULT_FLOW_LIMIT, DIRECT_CASE_MAX_VERTICES, SEARCH_NODE_BUDGET
from nzflows.domain.flow import (
    Orientation,
    flow_to_orientation,
    orientation_key,
    orientation_to_flow,
)
from nzflows.domain.graph import Edge, Multigraph
from nzflows.domain.trace import LiftPair, ReductionTrace, SuppressDeg2
from nzflows.exceptions import (
    ExtensionOracleError,
    InvalidInputError,
    MaderViolationError,
    PreconditionError,
    Z3RecursionError,
)
from nzflows.generators.boundary_z3 import (
    Boundary,
    OrientationState,
    balanced_preorientation,
    boundary_from_oriented_edges,
    extend_orientation_search,
    hypotheses_hold,
    iter_orientation_extensions,
    out_minus_in,
    verify_beta_flow,
)
from nzflows.graphs.connectivity import (
    CutCertificate,
    cai_bound_holds,
    find_6splittable_pair,
    find_small_nontrivial_cut,
    find_splittable_pair,
    is_k_edge_connected,
    maximal_removable_set,
    require_k_edge_connected,
)
from nzflows.graphs.surgery import (
    clique_expansion,
    identify_vertices,
    lift_pair,
    pull_back_flow,
    strip_loops,
    suppress_or_split_to_max_degree,
    suppress_vertex,
)


class RecursionCase(str, Enum):
    BASE = "base"
    THREE_SPLITS = "case1"
    SMALL_CUT = "case2"
    SMALL_GRAPH = "case3"
    DEGREE_SIX = "case4"
    DOUBLE_EDGE = "case5"
    MANY_REMOVABLE = "caseA"
    FEW_REMOVABLE = "caseB"


@dataclass(eq=False)
class Z3RecursionNode:
    """One call of the recursion; the boundary is identically zero."""

    graph: Multigraph
    v: int
    preorientation: Dict[int, int]
    case: Optional[RecursionCase] = None
    children: List["Z3RecursionNode"] = field(default_factory=list)
    emitted: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def boundary(self) -> Boundary:
        return Boundary.zero(self.graph.n)

    def walk(self) -> Iterator["Z3RecursionNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def case_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for node in self.walk():
            if node.case is not None:
                counts[node.case.value] = counts.get(node.case.value, 0) + 1
        return counts


def _leaves(e: Edge, sign: int, v: int) -> bool:
    return (sign == 1) == (e.tail == v)


def _transport(
    pre: Mapping[int, int], step, v: int
) -> Tuple[Dict[int, int], int]:
    """Carry the preorientation at v through a lift or suppression away from v."""
    if not isinstance(step, (LiftPair, SuppressDeg2)):
        raise InvalidInputError(f"cannot transport a preorientation through a {step.kind} step")
    moved = {eid: sign for eid, sign in pre.items() if eid not in (step.e1.edge_id, step.e2.edge_id)}
    new_v = step.vertex_map[v]
    new_edge = step.new_edge
    if new_edge.is_loop and new_edge.tail == new_v:
        raise Z3RecursionError(f"surgery at {step.v} would create a loop at the distinguished vertex")
    if step.e1.edge_id in pre and step.e1.other(step.v) == v:
        # the new edge starts at v
        moved[new_edge.edge_id] = 1 if _leaves(step.e1, pre[step.e1.edge_id], v) else -1
    elif step.e2.edge_id in pre and step.e2.other(step.v) == v:
        moved[new_edge.edge_id] = -1 if _leaves(step.e2, pre[step.e2.edge_id], v) else 1
    return moved, new_v


class Z3FlowGenerator:
    """Lazy recursive generator; ``root`` holds the recursion tree of the last run."""

    def __init__(
        self,
        node_budget: Optional[int] = SEARCH_NODE_BUDGET,
        direct_case_max_vertices: int = DIRECT_CASE_MAX_VERTICES,
    ):
        self.node_budget = node_budget
        self.direct_case_max_vertices = direct_case_max_vertices
        self.root: Optional[Z3RecursionNode] = None

    # ------------------------------------------------------------------
    # Entry points
    # ------------------------------------------------------------------

    def flows(self, g: Multigraph, limit: Optional[int] = DEFAULT_FLOW_LIMIT) -> Iterator[Orientation]:
        """Distinct nowhere-zero Z3-flows (as orientations) of a 6-edge-connected graph."""
        if g.n < 2:
            raise PreconditionError("the Z3 generator needs at least two vertices")
        require_k_edge_connected(g, 6)
        if limit is not None and limit <= 0:
            return
        reduced, trace = suppress_or_split_to_max_degree(g, 6, 7)
        v = 0
        pre = balanced_preorientation(reduced, v)
        self.root = None
        zero = Boundary.zero(g.n)
        seen: Set = set()
        for orientation in self.extend(reduced, v, pre):
            full = self._pull_back(orientation, trace) if trace.steps else orientation
            if not verify_beta_flow(g, full, zero):
                raise Z3RecursionError("pulled-back orientation is not a Z3-flow")
            key = orientation_key(full)
            if key in seen:
                continue
            seen.add(key)
            yield full
            if limit is not None and len(seen) >= limit:
                return

    def extend(
        self,
        g: Multigraph,
        v: int,
        pre: Mapping[int, int],
        parent: Optional[Z3RecursionNode] = None,
    ) -> Iterator[Orientation]:
        """Nowhere-zero Z3-flows of ``g`` agreeing with ``pre`` on the edges at v."""
        node = Z3RecursionNode(g, v, dict(pre))
        if parent is None:
            self.root = node
        else:
            parent.children.append(node)
        core, loops = strip_loops(g)
        self._check_preorientation(core, v, pre)
        for base in self._dispatch(core, v, pre, node):
            for eid, sign in pre.items():
                if base[eid] != sign:
                    raise Z3RecursionError(f"edge {eid} lost its preorientation")
            for signs in itertools.product((1, -1), repeat=len(loops)):
                orientation = dict(base)
                orientation.update(zip((loop.edge_id for loop in loops), signs))
                node.emitted += 1
                yield orientation

    # ------------------------------------------------------------------
    # Dispatch
    # ------------------------------------------------------------------

    def _check_preorientation(self, g: Multigraph, v: int, pre: Mapping[int, int]) -> None:
        expected = {e.edge_id for e in g.non_loop_incident(v)}
        if set(pre) != expected:
            raise InvalidInputError(f"preorientation must cover exactly the edges at vertex {v}")
        if out_minus_in(g, pre)[v] % 3 != 0:
            raise InvalidInputError(f"preorientation at vertex {v} is not balanced mod 3")

    def _dispatch(self, g: Multigraph, v: int, pre: Mapping[int, int], node: Z3RecursionNode) -> Iterator[Orientation]:
        if g.n < 2:
            raise Z3RecursionError("recursion reached a single vertex")
        if g.n == 2:
            node.case = RecursionCase.BASE
            yield dict(pre)
            return
        splits = self._find_three_splits(g, v)
        if splits is not None:
            node.case = RecursionCase.THREE_SPLITS
            yield from self._three_splits(g, v, pre, node, *splits)
            return
        cut = find_small_nontrivial_cut(g, 7, v)
        if cut is not None:
            node.case = RecursionCase.SMALL_CUT
            yield from self._small_cut(g, v, pre, node, set(cut.side))
            return
        if g.n <= self.direct_case_max_vertices:
            node.case = RecursionCase.SMALL_GRAPH
            yield from self._small_graph(g, v, pre)
            return
        six = [s for s in g.vertices if s != v and g.non_loop_degree(s) == 6]
        if six:
            node.case = RecursionCase.DEGREE_SIX
            yield from self._degree_six(g, v, pre, node, six[0])
            return
        double = self._find_double_edge(g, v)
        if double is not None:
            node.case = RecursionCase.DOUBLE_EDGE
            yield from self._double_edge(g, v, pre, node, *double)
            return
        yield from self._removable_set(g, v, pre, node)

    # ------------------------------------------------------------------
    # Three ways to split
    # ------------------------------------------------------------------

    def _representatives(self, g: Multigraph, s: int) -> Dict[int, int]:
        """Lowest edge id from s to each distinct neighbour."""
        reps: Dict[int, int] = {}
        for e in g.non_loop_incident(s):
            reps.setdefault(e.other(s), e.edge_id)
        return reps

    def _find_three_splits(self, g: Multigraph, v: int) -> Optional[Tuple[int, Tuple[int, int, int]]]:
        for s in g.vertices:
            if s == v or g.non_loop_degree(s) != 6:
                continue
            reps = self._representatives(g, s)
            if len(reps) < 3:
                continue
            verdict: Dict[Tuple[int, int], bool] = {}
            for triple in itertools.combinations(sorted(reps), 3):
                edges = tuple(reps[x] for x in triple)
                ok = True
                for a, b in itertools.combinations(edges, 2):
                    if (a, b) not in verdict:
                        found = find_6splittable_pair(g, s, pairs=[(a, b)])
                        verdict[(a, b)] = not isinstance(found, CutCertificate)
                    if not verdict[(a, b)]:
                        ok = False
                        break
                if ok:
                    return s, edges  # type: ignore[return-value]
        return None

    def _split_off(
        self, g: Multigraph, v: int, pre: Mapping[int, int], s: int, first: int, second: int
    ) -> Tuple[Multigraph, ReductionTrace, int, Dict[int, int]]:
        """Lift (first, second) at s, lift a Mader pair at s, suppress s."""
        g1, step1 = lift_pair(g, s, first, second)
        pre1, v1 = _transport(pre, step1, v)
        s1 = step1.vertex_map[s]

        def keeps_v_clear(a: Edge, b: Edge) -> bool:
            if a.other(s1) == v1 and b.other(s1) == v1:
                return False
            rest = [e for e in g1.non_loop_incident(s1) if e.edge_id not in (a.edge_id, b.edge_id)]
            return not all(e.other(s1) == v1 for e in rest)

        try:
            pair = find_splittable_pair(
                g1, s1, candidates=lambda a, b: keeps_v_clear(a, b) and a.other(s1) != b.other(s1)
            )
        except MaderViolationError:
            pair = find_splittable_pair(g1, s1, candidates=keeps_v_clear)
        g2, step2 = lift_pair(g1, s1, *pair)
        pre2, v2 = _transport(pre1, step2, v1)
        g3, step3 = suppress_vertex(g2, step2.vertex_map[s1])
        pre3, v3 = _transport(pre2, step3, v2)
        trace = (
            ReductionTrace(g)
            .extended(step1, g1)
            .extended(step2, g2)
            .extended(step3, g3)
        )
        return g3, trace, v3, pre3

    def _three_splits(
        self,
        g: Multigraph,
        v: int,
        pre: Mapping[int, int],
        node: Z3RecursionNode,
        s: int,
        edges: Tuple[int, int, int],
    ) -> Iterator[Orientation]:
        logger.debug(f"n={g.n}: three splits at vertex {s} via edges {edges}")
        seen: Set = set()
        for i, j in itertools.combinations(range(3), 2):
            reduced, trace, v3, pre3 = self._split_off(g, v, pre, s, edges[i], edges[j])
            for orientation in self.extend(reduced, v3, pre3, node):
                full = self._pull_back(orientation, trace)
                key = orientation_key(full)
                if key in seen:
                    continue
                seen.add(key)
                yield full

    # ------------------------------------------------------------------
    # Small cut
    # ------------------------------------------------------------------

    def _small_cut(
        self, g: Multigraph, v: int, pre: Mapping[int, int], node: Z3RecursionNode, side: Set[int]
    ) -> Iterator[Orientation]:
        if v in side:
            raise Z3RecursionError("small cut side must avoid the distinguished vertex")
        if len(side) < 2 or g.n - len(side) < 2:
            raise Z3RecursionError(f"cut side of size {len(side)} is trivial")
        logger.debug(f"n={g.n}: small cut of degree {g.cut_degree(side)} around {sorted(side)}")
        outer, outer_map, _ = identify_vertices(g, side)
        inner, _, inner_vertex = identify_vertices(g, set(g.vertices) - side)
        crossing = g.crossing_edges(side)
        for outer_flow in self.extend(outer, outer_map[v], pre, node):
            inner_pre = {eid: outer_flow[eid] for eid in crossing}
            for inner_flow in self.extend(inner, inner_vertex, inner_pre, node):
                combined = dict(outer_flow)
                combined.update(inner_flow)
                yield combined

    # ------------------------------------------------------------------
    # Small graphs
    # ------------------------------------------------------------------

    def _small_graph(self, g: Multigraph, v: int, pre: Mapping[int, int]) -> Iterator[Orientation]:
        zero = Boundary.zero(g.n)
        if g.n == 3:
            found = 0
            for orientation in iter_orientation_extensions(
                g, zero, OrientationState.from_fixed(g, pre), node_budget=self.node_budget
            ):
                found += 1
                yield orientation
            if found < 2:
                logger.warning(f"triangle case produced only {found} extensions")
            return
        for w in g.neighbors(v):
            outside = next((e for e in g.edges if not e.touches(v) and not e.touches(w)), None)
            if outside is None:
                continue
            f = g.edges_between(v, w)[0]
            reduced = g.without_edges([outside.edge_id, f.edge_id])
            state = OrientationState.from_fixed(
                reduced, {eid: sign for eid, sign in pre.items() if eid != f.edge_id}
            )
            extensions: List[Orientation] = []
            for sign in (1, -1):
                removed = {outside.edge_id: sign, f.edge_id: pre[f.edge_id]}
                beta = boundary_from_oriented_edges(g, removed)
                if not hypotheses_hold(reduced, beta, v):
                    logger.warning(f"extension hypotheses fail at n={g.n}; searching anyway")
                found = extend_orientation_search(reduced, beta, state, node_budget=self.node_budget)
                if found is None:
                    break
                full = dict(found)
                full.update(removed)
                extensions.append(full)
            if len(extensions) == 2:
                yield from extensions
                return
            logger.debug(f"no extension after removing edges {outside.edge_id} and {f.edge_id}")
        raise ExtensionOracleError(f"no neighbour of {v} leads to two extensions at n={g.n}")

    # ------------------------------------------------------------------
    # Degree six, double edges
    # ------------------------------------------------------------------

    def _usable_side(self, g: Multigraph, v: int, side: Set[int]) -> Set[int]:
        if v in side:
            side = set(g.vertices) - side
        if len(side) < 2 or g.n - len(side) < 2 or g.cut_degree(side) > 7:
            raise Z3RecursionError(f"blocking set {sorted(side)} is not a small nontrivial cut")
        return side

    def _degree_six(
        self, g: Multigraph, v: int, pre: Mapping[int, int], node: Z3RecursionNode, s: int
    ) -> Iterator[Orientation]:
        if g.n == 3:
            node.notes.append("via case3")
            yield from self._small_graph(g, v, pre)
            return
        for x in g.neighbors(s):
            if g.multiplicity(s, x) >= 3:
                node.notes.append("via case2 (triple edge)")
                yield from self._small_cut(g, v, pre, node, self._usable_side(g, v, {s, x}))
                return
        reps = self._representatives(g, s)
        edges = tuple(reps[x] for x in sorted(reps)[:3])
        for pair in itertools.combinations(edges, 2):
            found = find_6splittable_pair(g, s, pairs=[pair])
            if isinstance(found, CutCertificate):
                node.notes.append("via case2 (blocked split)")
                side = self._usable_side(g, v, set(found.side))
                yield from self._small_cut(g, v, pre, node, side)
                return
        node.notes.append("via case1")
        yield from self._three_splits(g, v, pre, node, s, edges)  # type: ignore[arg-type]

    def _find_double_edge(self, g: Multigraph, v: int) -> Optional[Tuple[Edge, Edge]]:
        for e in g.edges:
            if e.touches(v):
                continue
            partners = [x for x in g.edges_between(e.tail, e.head) if x.edge_id != e.edge_id]
            if partners and is_k_edge_connected(g.without_edges([e.edge_id]), 6):
                return e, partners[0]
        return None

    def _double_edge(
        self, g: Multigraph, v: int, pre: Mapping[int, int], node: Z3RecursionNode, e: Edge, f: Edge
    ) -> Iterator[Orientation]:
        logger.debug(f"n={g.n}: deleting edge {e.edge_id} parallel to {f.edge_id}")
        same_direction = e.tail == f.tail
        for orientation in self.extend(g.without_edges([e.edge_id]), v, pre, node):
            full = dict(orientation)
            flipped = -orientation[f.edge_id]
            full[f.edge_id] = flipped
            full[e.edge_id] = flipped if same_direction else -flipped
            yield full

    # ------------------------------------------------------------------
    # Removable edge sets
    # ------------------------------------------------------------------

    def _removable_set(
        self, g: Multigraph, v: int, pre: Mapping[int, int], node: Z3RecursionNode
    ) -> Iterator[Orientation]:
        expanded, step = clique_expansion(g, v)
        removable = maximal_removable_set(expanded, 6)
        new_vertices = set(step.new_vertices)
        free_set = sorted(
            eid
            for eid in removable
            if not any(expanded.edge(eid).touches(x) for x in new_vertices)
        )
        node.notes.append(f"|F'|={len(removable)}, |F|={len(free_set)}")
        if 12 * len(free_set) >= g.n - 2:
            node.case = RecursionCase.MANY_REMOVABLE
            yield from self._free_orientations(g, v, pre, free_set)
            return

        node.case = RecursionCase.FEW_REMOVABLE
        minimal = expanded.without_edges(removable)
        if minimal.is_simple() and not cai_bound_holds(minimal):
            logger.warning(f"degree-6 count of a minimally 6-edge-connected graph on {minimal.n} vertices is below the Cai bound")
            node.notes.append("cai bound violated")
        touched = {x for eid in removable for x in expanded.edge(eid).endpoints}
        inverse = {new: old for old, new in step.vertex_map.items()}
        candidates = [
            x
            for x in minimal.vertices
            if minimal.degree(x) == 6 and x not in new_vertices and x not in touched
        ]
        if not candidates:
            raise Z3RecursionError(f"no reduction applies at n={g.n}")
        yield from self._degree_six(g, v, pre, node, inverse[candidates[0]])

    def _free_orientations(
        self, g: Multigraph, v: int, pre: Mapping[int, int], free_set: List[int]
    ) -> Iterator[Orientation]:
        rest = g.without_edges(free_set)
        state = OrientationState.from_fixed(rest, pre)
        for signs in itertools.product((1, -1), repeat=len(free_set)):
            chosen = dict(zip(free_set, signs))
            beta = boundary_from_oriented_edges(g, chosen)
            found = extend_orientation_search(rest, beta, state, node_budget=self.node_budget)
            if found is None:
                raise ExtensionOracleError(f"no extension for orientation {chosen} of the removable set")
            full = dict(found)
            full.update(chosen)
            yield full

    # ------------------------------------------------------------------

    @staticmethod
    def _pull_back(orientation: Mapping[int, int], trace: ReductionTrace) -> Orientation:
        return flow_to_orientation(pull_back_flow(orientation_to_flow(orientation), trace))


def z3_flow_family(g: Multigraph, limit: Optional[int] = DEFAULT_FLOW_LIMIT) -> Iterator[Orientation]:
    return Z3FlowGenerator().flows(g, limit)
