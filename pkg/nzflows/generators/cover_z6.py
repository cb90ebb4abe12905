"""
Anchored Chain Covers and Z2xZ3 Flow Generation

A cover splits the vertex set into chains C1..Ck (C1 a cycle, later chains
doubled paths possibly subdivided, or single vertices), each later chain
attached to the earlier ones by two anchor edges. The remaining edges are
external. From a cover the generator fixes the Z2 part to the indicator of the
chain edges plus an even anchor subset A', and builds the Z3 part by routing
external values through the oriented chain subgraph, correcting anchors chain
by chain and shifting every cover cycle.
"""

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
from loguru import logger

from nzflows.config import DEFAULT_FLOW_LIMIT
from nzflows.domain.flow import Flow
from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import CoverConstructionError, PreconditionError
from nzflows.graphs.connectivity import (
    leaf_2ec_component,
    local_edge_connectivity,
    require_k_edge_connected,
)
from nzflows.graphs.traversal import (
    arcs_of,
    cycle_vertices,
    directed_path,
    shortest_cycle,
    undirected_path,
)
from nzflows.utils.bounds import ExactBound

Z2XZ3 = GroupSpec.z2xz3()

# (edge id, +1 when the walk follows the reference direction)
Walk = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Chain:
    """A cover chain; ``cycles`` are its cycles as directed closed walks."""

    kind: str  # "cycle", "chain" or "vertex"
    vertices: Tuple[int, ...]
    edge_ids: Tuple[int, ...]
    u: int
    v: int
    cycles: Tuple[Walk, ...] = ()


@dataclass(frozen=True)
class ChainCover:
    chains: Tuple[Chain, ...]
    # anchors[i] belongs to chains[i + 1]: (edge entering at u, edge leaving at v)
    anchors: Tuple[Tuple[int, int], ...]
    external: FrozenSet[int]
    p: int
    even_anchor_subset: FrozenSet[int]

    @property
    def k(self) -> int:
        return len(self.chains)

    @property
    def anchor_ids(self) -> FrozenSet[int]:
        return frozenset(eid for pair in self.anchors for eid in pair)

    @property
    def chain_edge_ids(self) -> FrozenSet[int]:
        return frozenset(eid for chain in self.chains for eid in chain.edge_ids)

    def chain_of(self) -> Dict[int, int]:
        return {v: i for i, chain in enumerate(self.chains) for v in chain.vertices}

    def formula_bound(self) -> ExactBound:
        """2^|X| * 3^(p + |A'|/2)."""
        return ExactBound.power(2, len(self.external)).times(
            ExactBound.power(3, self.p + Fraction(len(self.even_anchor_subset), 2))
        )


@dataclass(frozen=True)
class CoverPlan:
    """Oriented chain subgraph with the walks the generator adds values along."""

    cover: ChainCover
    arcs: Dict[int, Tuple[int, int]]
    external_paths: Dict[int, Walk]
    anchor_cycles: Dict[int, Walk]
    cover_cycles: Tuple[Walk, ...]


@dataclass(frozen=True)
class CubicAnalysis:
    K: FrozenSet[int]
    J: FrozenSet[int]
    H: FrozenSet[int]
    q: int
    W: FrozenSet[int]
    W_prime: FrozenSet[int]
    toggle_cycles: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def free_edges(self) -> List[int]:
        return sorted(self.W - self.W_prime)


# ----------------------------------------------------------------------
# Cover construction
# ----------------------------------------------------------------------


def _cycle_chain(g: Multigraph, walk: List[Tuple[int, int]]) -> Chain:
    vertices = cycle_vertices(g, walk)
    return Chain(
        kind="cycle",
        vertices=tuple(vertices),
        edge_ids=tuple(sorted(eid for eid, _ in walk)),
        u=vertices[0],
        v=vertices[0],
        cycles=(tuple(walk),),
    )


def _two_path_support(g: Multigraph, inside: Set[int], u: int, v: int) -> List[int]:
    """Edges carrying a 2-unit u-v flow inside the vertex set ``inside``."""
    digraph = nx.DiGraph()
    digraph.add_nodes_from(inside)
    parallel: Dict[Tuple[int, int], List[int]] = {}
    for e in g.edges:
        if e.is_loop or e.tail not in inside or e.head not in inside:
            continue
        key = (min(e.endpoints), max(e.endpoints))
        parallel.setdefault(key, []).append(e.edge_id)
        for a, b in ((e.tail, e.head), (e.head, e.tail)):
            if digraph.has_edge(a, b):
                digraph[a][b]["capacity"] += 1
            else:
                digraph.add_edge(a, b, capacity=1)
    digraph.add_edge("start", u, capacity=2)
    value, flow = nx.maximum_flow(digraph, "start", v)
    if value < 2:
        raise CoverConstructionError(f"no two edge-disjoint paths from {u} to {v}")
    support = []
    for (a, b), ids in parallel.items():
        amount = abs(flow[a].get(b, 0) - flow[b].get(a, 0))
        support.extend(sorted(ids)[:amount])
    return sorted(support)


def _prune_to_minimal(g: Multigraph, support: List[int], u: int, v: int) -> List[int]:
    kept = list(support)
    for eid in sorted(support):
        trial = [x for x in kept if x != eid]
        if local_edge_connectivity(g.restrict(trial), u, v) >= 2:
            kept = trial
    return kept


def _side_walk(g: Multigraph, ids: Set[int], start: int, first: int, stops: Set[int]) -> Tuple[List[Tuple[int, int]], int]:
    """Follow edges from ``start`` through degree-2 vertices until a stop vertex."""
    walk = []
    current, eid = start, first
    while True:
        e = g.edge(eid)
        walk.append((eid, 1 if e.tail == current else -1))
        ids.discard(eid)
        current = e.other(current)
        if current in stops:
            return walk, current
        following = [x.edge_id for x in g.incident(current) if x.edge_id in ids]
        if len(following) != 1:
            raise CoverConstructionError(f"chain is not a doubled path at vertex {current}")
        eid = following[0]


def _decompose_chain(g: Multigraph, edge_ids: List[int], u: int, v: int) -> Tuple[Walk, ...]:
    """Split a minimal two-path subgraph into its cycles, from u towards v."""
    remaining = set(edge_ids)
    degree: Dict[int, int] = {}
    for eid in edge_ids:
        for x in g.edge(eid).endpoints:
            degree[x] = degree.get(x, 0) + 1
    stops = {x for x, d in degree.items() if d == 4} | {v}
    cycles = []
    current = u
    while current != v:
        at = [e.edge_id for e in g.incident(current) if e.edge_id in remaining]
        if len(at) != 2:
            raise CoverConstructionError(f"chain is not a doubled path at vertex {current}")
        forward, end = _side_walk(g, remaining, current, at[0], stops)
        backward, other_end = _side_walk(g, remaining, current, at[1], stops)
        if end != other_end:
            raise CoverConstructionError(f"chain sides from {current} do not meet")
        cycles.append(tuple(forward) + tuple((eid, -d) for eid, d in reversed(backward)))
        current = end
    if remaining:
        raise CoverConstructionError("chain has edges off its cycles")
    return tuple(cycles)


def _build_chain(g: Multigraph, component: List[int], u: int, v: int) -> Chain:
    if u == v:
        return Chain(kind="vertex", vertices=(u,), edge_ids=(), u=u, v=u)
    support = _two_path_support(g, set(component), u, v)
    minimal = _prune_to_minimal(g, support, u, v)
    cycles = _decompose_chain(g, minimal, u, v)
    vertices = sorted({x for eid in minimal for x in g.edge(eid).endpoints})
    return Chain(
        kind="chain",
        vertices=tuple(vertices),
        edge_ids=tuple(sorted(minimal)),
        u=u,
        v=v,
        cycles=cycles,
    )


def compute_even_anchor_subset(g: Multigraph, anchors) -> FrozenSet[int]:
    """Maximal A' within the anchors with every vertex meeting an even number of them.

    Cycles are peeled off one at a time, so A' is a union of edge-disjoint
    cycles and what remains of the anchors is a forest.
    """
    remaining = sorted(set(anchors))
    even: Set[int] = set()
    while True:
        uf = nx.utils.UnionFind(g.vertices)
        forest: List[int] = []
        closing = None
        for eid in remaining:
            e = g.edge(eid)
            if uf[e.tail] == uf[e.head]:
                closing = eid
                break
            uf.union(e.tail, e.head)
            forest.append(eid)
        if closing is None:
            return frozenset(even)
        e = g.edge(closing)
        path = undirected_path(g, e.tail, e.head, forest) if not e.is_loop else []
        cycle = {closing} | {eid for eid, _ in path}
        even |= cycle
        remaining = [eid for eid in remaining if eid not in cycle]


def build_anchored_chain_cover(g: Multigraph) -> ChainCover:
    """Anchored chain cover of a 3-edge-connected graph (loops become external)."""
    if g.n < 2:
        raise PreconditionError("a chain cover needs at least two vertices")
    require_k_edge_connected(g, 3)
    first = shortest_cycle(g)
    if first is None:
        raise PreconditionError("graph has no cycle")
    chains = [_cycle_chain(g, first)]
    covered = set(chains[0].vertices)
    anchors: List[Tuple[int, int]] = []
    while len(covered) < g.n:
        component = leaf_2ec_component(g, covered)
        inside = set(component)
        attaching = [
            e
            for e in g.edges
            if (e.tail in inside and e.head in covered)
            or (e.head in inside and e.tail in covered)
        ]
        if len(attaching) < 2:
            raise CoverConstructionError(
                "leaf component has fewer than two edges to the covered part",
                chain_index=len(chains) + 1,
            )
        a1, a2 = attaching[0], attaching[1]
        u = a1.tail if a1.tail in inside else a1.head
        v = a2.tail if a2.tail in inside else a2.head
        chain = _build_chain(g, component, u, v)
        chains.append(chain)
        anchors.append((a1.edge_id, a2.edge_id))
        covered |= set(chain.vertices)
        logger.debug(
            f"chain {len(chains)}: {chain.kind} {chain.u}->{chain.v}, anchors {a1.edge_id}, {a2.edge_id}"
        )
    chain_edges = {eid for chain in chains for eid in chain.edge_ids}
    anchor_ids = {eid for pair in anchors for eid in pair}
    external = frozenset(e.edge_id for e in g.edges if e.edge_id not in chain_edges | anchor_ids)
    p = sum(len(chain.cycles) for chain in chains)
    cover = ChainCover(
        chains=tuple(chains),
        anchors=tuple(anchors),
        external=external,
        p=p,
        even_anchor_subset=compute_even_anchor_subset(g, anchor_ids),
    )
    logger.info(
        f"chain cover: k={cover.k}, p={p}, |X|={len(external)}, |A'|={len(cover.even_anchor_subset)}"
    )
    return cover


def validate_cover(g: Multigraph, cover: ChainCover) -> bool:
    """Check partition, anchor placement, external set and the evenness of A'."""
    seen: List[int] = sorted(v for chain in cover.chains for v in chain.vertices)
    if seen != list(g.vertices):
        return False
    if cover.chains[0].kind != "cycle":
        return False
    earlier: Set[int] = set(cover.chains[0].vertices)
    for chain, (a1, a2) in zip(cover.chains[1:], cover.anchors):
        first, second = g.edge(a1), g.edge(a2)
        if a1 == a2 or not first.touches(chain.u) or not second.touches(chain.v):
            return False
        if first.other(chain.u) not in earlier or second.other(chain.v) not in earlier:
            return False
        earlier |= set(chain.vertices)
    expected = g.edge_id_set - cover.chain_edge_ids - cover.anchor_ids
    if cover.external != expected:
        return False
    parity = [0] * g.n
    for eid in cover.even_anchor_subset:
        e = g.edge(eid)
        parity[e.tail] ^= 1
        parity[e.head] ^= 1
    return not any(parity) and cover.even_anchor_subset <= cover.anchor_ids


# ----------------------------------------------------------------------
# Generation
# ----------------------------------------------------------------------


def _walk_from_ids(arcs: Dict[int, Tuple[int, int]], g: Multigraph, ids: Sequence[int]) -> Walk:
    return tuple((eid, 1 if arcs[eid] == g.edge(eid).endpoints else -1) for eid in ids)


def plan_cover(g: Multigraph, cover: ChainCover) -> CoverPlan:
    """Orient the chain subgraph and find every directed path/cycle the generator uses."""
    arcs: Dict[int, Tuple[int, int]] = {}
    for chain in cover.chains:
        for cycle in chain.cycles:
            arcs.update(arcs_of(g, cycle))
    for chain, (a1, a2) in zip(cover.chains[1:], cover.anchors):
        first, second = g.edge(a1), g.edge(a2)
        arcs[a1] = (first.other(chain.u), chain.u)
        arcs[a2] = (chain.v, second.other(chain.v))

    external_paths: Dict[int, Walk] = {}
    for eid in sorted(cover.external):
        e = g.edge(eid)
        if e.is_loop:
            external_paths[eid] = ()
            continue
        path = directed_path(arcs, e.head, e.tail)
        if path is None:
            raise CoverConstructionError(f"no directed path back along external edge {eid}")
        external_paths[eid] = _walk_from_ids(arcs, g, path)

    anchor_cycles: Dict[int, Walk] = {}
    allowed: Set[int] = set(cover.chains[0].edge_ids)
    for index, (chain, (a1, a2)) in enumerate(zip(cover.chains[1:], cover.anchors), start=2):
        inner_arcs = {eid: arcs[eid] for eid in chain.edge_ids}
        inner = directed_path(inner_arcs, chain.u, chain.v)
        outer_arcs = {eid: arcs[eid] for eid in allowed}
        x, y = arcs[a1][0], arcs[a2][1]
        outer = directed_path(outer_arcs, y, x)
        if inner is None or outer is None:
            raise CoverConstructionError("no directed cycle through both anchors", chain_index=index)
        anchor_cycles[index] = _walk_from_ids(arcs, g, [a1] + inner + [a2] + outer)
        allowed |= set(chain.edge_ids) | {a1, a2}

    cover_cycles = tuple(cycle for chain in cover.chains for cycle in chain.cycles)
    return CoverPlan(cover, arcs, external_paths, anchor_cycles, cover_cycles)


def _add_along(values: Dict[int, int], walk: Walk, amount: int) -> None:
    for eid, sign in walk:
        values[eid] = (values[eid] + sign * amount) % 3


def _anchor_amounts(values: Dict[int, int], walk: Walk, a1: int, a2: int) -> Dict[int, int]:
    signs = dict(walk)
    return {a: (signs[a] * values[a]) % 3 for a in (a1, a2)}


def _z2_part(g: Multigraph, cover: ChainCover) -> Dict[int, int]:
    ones = cover.chain_edge_ids | cover.even_anchor_subset
    return {eid: 1 if eid in ones else 0 for eid in g.edge_ids}


def _to_flow(z2: Dict[int, int], z3: Dict[int, int]) -> Flow:
    return Flow(Z2XZ3, {eid: (z2[eid], z3[eid]) for eid in z2})


def _corrections(plan: CoverPlan, values: Dict[int, int], index: int) -> Iterator[Dict[int, int]]:
    """Anchor corrections for chains index, index-1, ..., 2 (depth-first, q ascending)."""
    if index < 2:
        yield values
        return
    a1, a2 = plan.cover.anchors[index - 2]
    walk = plan.anchor_cycles[index]
    amounts = _anchor_amounts(values, walk, a1, a2)
    forbidden = {amounts[a] for a in (a1, a2) if a not in plan.cover.even_anchor_subset}
    for q in range(3):
        if q in forbidden:
            continue
        corrected = dict(values)
        _add_along(corrected, walk, -q)
        yield from _corrections(plan, corrected, index - 1)


def generate_from_cover(
    g: Multigraph,
    cover: ChainCover,
    limit: Optional[int] = DEFAULT_FLOW_LIMIT,
    plan: Optional[CoverPlan] = None,
) -> Iterator[Flow]:
    """Nowhere-zero Z2xZ3 flows from a cover, lexicographic in the choice vector."""
    plan = plan or plan_cover(g, cover)
    z2 = _z2_part(g, cover)
    externals = sorted(cover.external)
    emitted = 0
    if limit is not None and limit <= 0:
        return
    for choice in itertools.product((1, 2), repeat=len(externals)):
        values = {eid: 0 for eid in g.edge_ids}
        for eid, c in zip(externals, choice):
            values[eid] = c
            _add_along(values, plan.external_paths[eid], c)
        for corrected in _corrections(plan, values, cover.k):
            for shifts in itertools.product(range(3), repeat=len(plan.cover_cycles)):
                z3 = dict(corrected)
                for cycle, s in zip(plan.cover_cycles, shifts):
                    _add_along(z3, cycle, s)
                yield _to_flow(z2, z3)
                emitted += 1
                if limit is not None and emitted >= limit:
                    return


def certified_cover_count(plan: CoverPlan) -> int:
    """Lower bound on the stream length: 2^|X| * 3^p * prod(1 + |anchors_i in A'|)."""
    cover = plan.cover
    count = 2 ** len(cover.external) * 3**cover.p
    for a1, a2 in cover.anchors:
        count *= 1 + sum(1 for a in (a1, a2) if a in cover.even_anchor_subset)
    return count


def special_sparse_zero_flow(
    g: Multigraph, cover: ChainCover, plan: Optional[CoverPlan] = None
) -> Flow:
    """Flow whose Z3 part vanishes only on chain edges, on at most a third of them."""
    plan = plan or plan_cover(g, cover)
    values = {eid: 0 for eid in g.edge_ids}
    for eid in sorted(cover.external):
        values[eid] = 1
        _add_along(values, plan.external_paths[eid], 1)
    for index in range(cover.k, 1, -1):
        a1, a2 = cover.anchors[index - 2]
        walk = plan.anchor_cycles[index]
        amounts = _anchor_amounts(values, walk, a1, a2)
        q = min(x for x in range(3) if x not in amounts.values())
        _add_along(values, walk, -q)
    for cycle in plan.cover_cycles:
        best_shift, best_zeros = 0, None
        for s in range(3):
            zeros = sum(1 for eid, sign in cycle if (values[eid] + sign * s) % 3 == 0)
            if best_zeros is None or zeros < best_zeros:
                best_shift, best_zeros = s, zeros
        _add_along(values, cycle, best_shift)
    return _to_flow(_z2_part(g, cover), values)


# ----------------------------------------------------------------------
# Cubic graphs
# ----------------------------------------------------------------------


def analyze_cubic(g: Multigraph, cover: ChainCover, special: Flow) -> CubicAnalysis:
    """K, J, H, q, W and W' for a cubic graph and its special flow."""
    if not g.is_cubic():
        raise PreconditionError("cubic analysis needs a cubic graph")
    K = frozenset(v for chain in cover.chains if chain.cycles for v in chain.vertices)
    J = frozenset(set(g.vertices) - K)
    # every edge off the chains: the edges at J, the external edges and the anchors
    H = frozenset(g.edge_id_set - cover.chain_edge_ids)
    uf = nx.utils.UnionFind(g.vertices)
    touched: Set[int] = set()
    for eid in H:
        e = g.edge(eid)
        uf.union(e.tail, e.head)
        touched |= {e.tail, e.head}
    q = len({uf[v] for v in touched})
    W = frozenset(
        eid for eid in cover.chain_edge_ids if special.values[eid][1] != 0
    )
    W_prime: Set[int] = set()
    for eid in sorted(W):
        e = g.edge(eid)
        if uf[e.tail] != uf[e.head]:
            uf.union(e.tail, e.head)
            W_prime.add(eid)
    base = set(H) | W_prime
    cycles: Dict[int, Tuple[int, ...]] = {}
    for eid in sorted(W - W_prime):
        e = g.edge(eid)
        path = undirected_path(g, e.tail, e.head, base)
        if path is None:
            raise CoverConstructionError(f"edge {eid} does not close a cycle in H + W'")
        cycles[eid] = (eid,) + tuple(x for x, _ in path)
    return CubicAnalysis(K, J, H, q, W, frozenset(W_prime), cycles)


def toggled_flows(
    special: Flow, analysis: CubicAnalysis, limit: Optional[int] = DEFAULT_FLOW_LIMIT
) -> Iterator[Flow]:
    """All 2^|W - W'| flows from toggling the Z2 part along the chosen cycles."""
    free = analysis.free_edges
    emitted = 0
    for mask in range(2 ** len(free)):
        values = dict(special.values)
        for bit, eid in enumerate(free):
            if mask >> bit & 1:
                for x in analysis.toggle_cycles[eid]:
                    z2, z3 = values[x]
                    values[x] = (z2 ^ 1, z3)
        yield Flow(special.group, values)
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def cubic_flow_family(g: Multigraph, limit: Optional[int] = DEFAULT_FLOW_LIMIT) -> Iterator[Flow]:
    """Cover flows followed by toggled flows on a 3-edge-connected cubic graph, deduplicated."""
    if not g.is_cubic():
        raise PreconditionError("cubic_flow_family needs a cubic graph")
    cover = build_anchored_chain_cover(g)
    plan = plan_cover(g, cover)
    special = special_sparse_zero_flow(g, cover, plan)
    analysis = analyze_cubic(g, cover, special)
    seen: Set = set()
    sources = itertools.chain(
        generate_from_cover(g, cover, limit, plan), toggled_flows(special, analysis, limit)
    )
    for flow in sources:
        key = flow.key()
        if key in seen:
            continue
        seen.add(key)
        yield flow
        if limit is not None and len(seen) >= limit:
            return
