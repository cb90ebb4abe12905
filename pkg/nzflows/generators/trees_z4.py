"""
Z2xZ2 Flows from Pairs of Disjoint Spanning Trees

Z2 and Z2xZ2 have only elements of order two, so orientations play no role
here. A Z2 assignment on the co-tree of a spanning tree extends uniquely to a
flow; every construction below is that extension applied coordinate-wise.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from loguru import logger

from nzflows.config import DEFAULT_FLOW_LIMIT, TREE_PAIR_SCAN_LIMIT
from nzflows.domain.flow import Flow
from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import InvalidInputError, PreconditionError
from nzflows.graphs.connectivity import require_k_edge_connected
from nzflows.graphs.trees import (
    TreePair,
    components_without_vertex,
    is_spanning_tree,
    is_valid_tree_pair,
    leaves,
    pack_two_spanning_trees,
    tree_degree,
)
from nzflows.utils.bounds import ExactBound

Z2 = GroupSpec.cyclic(2)
Z2XZ2 = GroupSpec.z2xz2()

DENSE_ELEMENTS = ((1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class CanonicalFlowInfo:
    tree: FrozenSet[int]
    flow: Flow
    ones_on_tree: FrozenSet[int]

    @property
    def q(self) -> int:
        return len(self.ones_on_tree)


@dataclass(frozen=True)
class FlipAnalysis:
    L1: FrozenSet[int]
    L2: FrozenSet[int]
    V4: FrozenSet[int]
    coloring: Dict[int, int]
    X: Tuple[int, ...]

    @property
    def candidates(self) -> FrozenSet[int]:
        return self.L1 | self.L2 | self.V4

    def exponent(self, n: int) -> int:
        """ceil(max(n - n1 - n2, (n1 + n2) / 2) / 4)."""
        n1, n2 = len(self.L1), len(self.L2)
        value = max(Fraction(n - n1 - n2), Fraction(n1 + n2, 2)) / 4
        return -((-value.numerator) // value.denominator)


# ----------------------------------------------------------------------
# Canonical flows
# ----------------------------------------------------------------------


def extend_z2_from_cotree(
    g: Multigraph, tree: Iterable[int], assignment: Mapping[int, int]
) -> Dict[int, int]:
    """The unique Z2-flow agreeing with ``assignment`` off the spanning tree.

    Tree edges are solved by repeatedly removing a leaf of the remaining tree.
    """
    tree_ids = set(tree)
    excess = [0] * g.n
    for e in g.edges:
        if e.edge_id in tree_ids:
            continue
        if e.edge_id not in assignment:
            raise InvalidInputError(f"no value for co-tree edge {e.edge_id}")
        if not e.is_loop:
            value = assignment[e.edge_id] % 2
            excess[e.tail] ^= value
            excess[e.head] ^= value
    remaining: Dict[int, Set[int]] = {v: set() for v in g.vertices}
    for eid in tree_ids:
        e = g.edge(eid)
        remaining[e.tail].add(eid)
        remaining[e.head].add(eid)
    values = {eid: assignment[eid] % 2 for eid in g.edge_ids if eid not in tree_ids}
    stack = sorted((v for v in g.vertices if len(remaining[v]) == 1), reverse=True)
    while stack:
        v = stack.pop()
        if len(remaining[v]) != 1:
            continue
        eid = remaining[v].pop()
        u = g.edge(eid).other(v)
        values[eid] = excess[v]
        excess[u] ^= excess[v]
        excess[v] = 0
        remaining[u].discard(eid)
        if len(remaining[u]) == 1:
            stack.append(u)
    if any(excess):
        raise InvalidInputError("edge set is not a spanning tree")
    return values


def canonical_z2_flow(g: Multigraph, tree: Iterable[int]) -> CanonicalFlowInfo:
    """The Z2-flow equal to 1 on every edge off the tree."""
    tree_ids = frozenset(tree)
    if not is_spanning_tree(g, tree_ids):
        raise PreconditionError("edge set is not a spanning tree")
    values = extend_z2_from_cotree(
        g, tree_ids, {eid: 1 for eid in g.edge_ids if eid not in tree_ids}
    )
    ones = frozenset(eid for eid in tree_ids if values[eid] == 1)
    return CanonicalFlowInfo(tree_ids, Flow(Z2, values), ones)


def _combine(first: Mapping[int, int], second: Mapping[int, int]) -> Flow:
    return Flow(Z2XZ2, {eid: (first[eid], second[eid]) for eid in first})


def flows_from_tree_pair(
    g: Multigraph, t1: Iterable[int], t2: Iterable[int], limit: Optional[int] = None
) -> Tuple[int, Iterator[Flow]]:
    """q and the 2^q flows pairing the canonical flow of t1 with a second coordinate.

    The second coordinate takes a chosen value on each edge of t1 where the
    canonical flow is 1, the value 1 on every other edge off t2, and is solved
    on t2; so it can only vanish where the first coordinate does not.
    """
    pair = TreePair.of(t1, t2)
    if not is_valid_tree_pair(g, pair):
        raise PreconditionError("flows_from_tree_pair needs two disjoint spanning trees")
    info = canonical_z2_flow(g, pair.t1)
    first = info.flow.component(0)
    ones = sorted(info.ones_on_tree)

    def stream() -> Iterator[Flow]:
        for count, choice in enumerate(itertools.product((0, 1), repeat=len(ones))):
            if limit is not None and count >= limit:
                return
            assignment = {eid: 1 for eid in g.edge_ids if eid not in pair.t2}
            assignment.update(zip(ones, choice))
            second = extend_z2_from_cotree(g, pair.t2, assignment)
            yield _combine(first, second)

    return info.q, stream()


def pair_canonical_flow(g: Multigraph, pair: TreePair) -> Flow:
    """Canonical flow of t1 in the first coordinate, of t2 in the second."""
    first = canonical_z2_flow(g, pair.t1).flow.component(0)
    second = canonical_z2_flow(g, pair.t2).flow.component(0)
    return _combine(first, second)


# ----------------------------------------------------------------------
# Flips
# ----------------------------------------------------------------------


def _tree_edges_at(g: Multigraph, tree: FrozenSet[int], v: int) -> List[int]:
    return [e.edge_id for e in g.incident(v) if e.edge_id in tree]


def _leaf_flip(g: Multigraph, t1: FrozenSet[int], t2: FrozenSet[int], v: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    (e1,) = _tree_edges_at(g, t1, v)
    u = g.edge(e1).other(v)
    labels = components_without_vertex(g, t2, v)
    for e2 in _tree_edges_at(g, t2, v):
        if labels[g.edge(e2).other(v)] == labels[u]:
            return (t1 - {e1}) | {e2}, (t2 - {e2}) | {e1}
    raise PreconditionError(f"no edge of the second tree joins {v} to the side of {u}")


def _double_degree_flip(g: Multigraph, t1: FrozenSet[int], t2: FrozenSet[int], v: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    first = _tree_edges_at(g, t1, v)
    second = _tree_edges_at(g, t2, v)
    far = {eid: g.edge(eid).other(v) for eid in first + second}
    c1 = components_without_vertex(g, t1, v)
    c2 = components_without_vertex(g, t2, v)
    if c1[far[second[0]]] != c1[far[second[1]]] and c2[far[first[0]]] != c2[far[first[1]]]:
        return (t1 - set(first)) | set(second), (t2 - set(second)) | set(first)
    for x, y in itertools.product(first, second):
        if c1[far[x]] == c1[far[y]] and c2[far[x]] == c2[far[y]]:
            return (t1 - {x}) | {y}, (t2 - {y}) | {x}
    raise PreconditionError(f"no single exchange at vertex {v} keeps both trees spanning")


def flip_at(g: Multigraph, t1: Iterable[int], t2: Iterable[int], v: int) -> TreePair:
    """The pair obtained by a flip at ``v`` (a leaf of either tree, or degree 2 in both)."""
    a, b = frozenset(t1), frozenset(t2)
    d1, d2 = tree_degree(g, a, v), tree_degree(g, b, v)
    if d1 == 1:
        new_a, new_b = _leaf_flip(g, a, b, v)
    elif d1 == 2 and d2 == 2:
        new_a, new_b = _double_degree_flip(g, a, b, v)
    elif d2 == 1:
        new_b, new_a = _leaf_flip(g, b, a, v)
    else:
        raise PreconditionError(f"vertex {v} has tree degrees ({d1}, {d2}); no flip applies")
    return TreePair(new_a, new_b)


def _degeneracy_coloring(g: Multigraph, edge_ids: FrozenSet[int]) -> Dict[int, int]:
    """Greedy colouring in reverse min-degree removal order (lowest id on ties)."""
    adjacency: Dict[int, Dict[int, int]] = {v: {} for v in g.vertices}
    for eid in edge_ids:
        e = g.edge(eid)
        if e.is_loop:
            continue
        adjacency[e.tail][e.head] = adjacency[e.tail].get(e.head, 0) + 1
        adjacency[e.head][e.tail] = adjacency[e.head].get(e.tail, 0) + 1
    alive = set(g.vertices)
    degree = {v: sum(adjacency[v].values()) for v in g.vertices}
    order = []
    while alive:
        v = min(alive, key=lambda x: (degree[x], x))
        order.append(v)
        alive.remove(v)
        for w, count in adjacency[v].items():
            if w in alive:
                degree[w] -= count
    coloring: Dict[int, int] = {}
    for v in reversed(order):
        used = {coloring[w] for w in adjacency[v] if w in coloring}
        coloring[v] = next(c for c in itertools.count() if c not in used)
    return coloring


def analyze_flips(g: Multigraph, pair: TreePair) -> FlipAnalysis:
    """Leaf sets, V4 and an independent flip set X of the union of the two trees."""
    if not is_valid_tree_pair(g, pair):
        raise PreconditionError("analyze_flips needs two disjoint spanning trees")
    L1 = frozenset(leaves(g, pair.t1))
    L2 = frozenset(leaves(g, pair.t2))
    V4 = frozenset(
        v
        for v in g.vertices
        if tree_degree(g, pair.t1, v) == 2 and tree_degree(g, pair.t2, v) == 2
    )
    coloring = _degeneracy_coloring(g, pair.edge_ids)
    candidates = L1 | L2 | V4
    classes: Dict[int, List[int]] = {}
    for v in sorted(candidates):
        classes.setdefault(coloring[v], []).append(v)
    best: Tuple[int, ...] = ()
    for color in sorted(classes):
        if len(classes[color]) > len(best):
            best = tuple(classes[color])
    return FlipAnalysis(L1, L2, V4, coloring, best)


def tree_pair_family(
    g: Multigraph, t1: Iterable[int], t2: Iterable[int], limit: Optional[int] = None
) -> Iterator[TreePair]:
    """One pair per subset of X, flips applied in ascending vertex order; distinct by key."""
    pair = TreePair.of(t1, t2)
    union = g.restrict(pair.edge_ids)
    analysis = analyze_flips(union, pair)
    logger.debug(f"flip set X = {list(analysis.X)}")
    seen: Set = set()
    for mask in range(2 ** len(analysis.X)):
        current = pair
        for bit, v in enumerate(analysis.X):
            if mask >> bit & 1:
                current = flip_at(union, current.t1, current.t2, v)
        key = current.key()
        if key in seen:
            continue
        seen.add(key)
        yield current
        if limit is not None and len(seen) >= limit:
            return


# ----------------------------------------------------------------------
# Flow families
# ----------------------------------------------------------------------


def z4_family_dense(
    g: Multigraph, t1: Iterable[int], t2: Iterable[int], limit: Optional[int] = None
) -> Iterator[Flow]:
    """3^(m-2n+2) flows: (1,0) on t1, (0,1) on t2, a free nonzero value elsewhere, then repaired."""
    pair = TreePair.of(t1, t2)
    if not is_valid_tree_pair(g, pair):
        raise PreconditionError("z4_family_dense needs two disjoint spanning trees")
    leftover = [eid for eid in g.edge_ids if eid not in pair.edge_ids]
    for count, choice in enumerate(itertools.product(DENSE_ELEMENTS, repeat=len(leftover))):
        if limit is not None and count >= limit:
            return
        chosen = dict(zip(leftover, choice))
        first_off_t2 = {eid: 1 for eid in pair.t1}
        first_off_t2.update({eid: value[0] for eid, value in chosen.items()})
        second_off_t1 = {eid: 1 for eid in pair.t2}
        second_off_t1.update({eid: value[1] for eid, value in chosen.items()})
        first = extend_z2_from_cotree(g, pair.t2, first_off_t2)
        second = extend_z2_from_cotree(g, pair.t1, second_off_t1)
        yield _combine(first, second)


def _best_q_tree(g: Multigraph, pairs: List[TreePair]) -> Tuple[int, TreePair]:
    best_q, best = -1, pairs[0]
    for pair in pairs:
        for candidate in (pair, pair.swapped()):
            q = canonical_z2_flow(g, candidate.t1).q
            if q > best_q:
                best_q, best = q, candidate
    return best_q, best


def z4_flow_family(
    g: Multigraph,
    limit: Optional[int] = DEFAULT_FLOW_LIMIT,
    pair_limit: int = TREE_PAIR_SCAN_LIMIT,
) -> Iterator[Flow]:
    """Dense flows, then the 2^q flows of the best-q tree, then pair-canonical flows; deduplicated."""
    if limit is not None and limit <= 0:
        return
    pair = pack_two_spanning_trees(g)
    if pair is None:
        raise PreconditionError("graph has no two disjoint spanning trees")
    pairs = list(tree_pair_family(g, pair.t1, pair.t2, limit=pair_limit))
    q, best = _best_q_tree(g, pairs)
    logger.info(f"{len(pairs)} tree pairs scanned; best q = {q}")
    _, q_flows = flows_from_tree_pair(g, best.t1, best.t2, limit)
    canonical = (
        pair_canonical_flow(g, p) for base in pairs for p in (base, base.swapped())
    )
    seen: Set = set()
    for flow in itertools.chain(z4_family_dense(g, pair.t1, pair.t2, limit), q_flows, canonical):
        key = flow.key()
        if key in seen:
            continue
        seen.add(key)
        yield flow
        if limit is not None and len(seen) >= limit:
            return


def z4_flow_family_4ec(g: Multigraph, limit: Optional[int] = DEFAULT_FLOW_LIMIT) -> Iterator[Flow]:
    """Entry point for 4-edge-connected graphs, which always have two disjoint spanning trees."""
    require_k_edge_connected(g, 4)
    return z4_flow_family(g, limit)


def z4_guaranteed_bound(g: Multigraph) -> int:
    """max(ceil(2^(n/250)), 3^(m-2n+2)) for a graph with two disjoint spanning trees."""
    generic = ExactBound.power(2, Fraction(g.n, 250)).ceiling()
    dense_exponent = g.m - 2 * g.n + 2
    dense = 3**dense_exponent if dense_exponent >= 0 else 1
    return max(generic, dense)
