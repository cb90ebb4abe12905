"""
Spanning Trees and Two-Tree Packing

Two edge-disjoint spanning trees are found with the matroid partition
(union) algorithm: edges are offered in ascending id order and inserted along
shortest augmenting exchange paths between the two forests.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx
from loguru import logger

from nzflows.domain.graph import Multigraph
from nzflows.exceptions import InvalidInputError
from nzflows.graphs.traversal import undirected_path


@dataclass(frozen=True)
class TreePair:
    """Two disjoint spanning trees given as edge id sets."""

    t1: FrozenSet[int]
    t2: FrozenSet[int]

    @classmethod
    def of(cls, t1: Iterable[int], t2: Iterable[int]) -> "TreePair":
        return cls(frozenset(t1), frozenset(t2))

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Unordered serialization: the two sorted id lists, smaller first."""
        a, b = tuple(sorted(self.t1)), tuple(sorted(self.t2))
        return (a, b) if a <= b else (b, a)

    def swapped(self) -> "TreePair":
        return TreePair(self.t2, self.t1)

    @property
    def edge_ids(self) -> FrozenSet[int]:
        return self.t1 | self.t2


def is_spanning_tree(g: Multigraph, edge_ids: Iterable[int]) -> bool:
    ids = set(edge_ids)
    if len(ids) != g.n - 1 or not ids <= g.edge_id_set:
        return False
    if any(g.edge(i).is_loop for i in ids):
        return False
    return len(g.components(ids)) == 1


def is_valid_tree_pair(g: Multigraph, pair: TreePair) -> bool:
    return (
        not (pair.t1 & pair.t2)
        and is_spanning_tree(g, pair.t1)
        and is_spanning_tree(g, pair.t2)
    )


def spanning_forest(g: Multigraph) -> List[int]:
    """Greedy spanning forest in ascending edge id order."""
    uf = nx.utils.UnionFind(g.vertices)
    forest = []
    for e in g.edges:
        if e.is_loop or uf[e.tail] == uf[e.head]:
            continue
        uf.union(e.tail, e.head)
        forest.append(e.edge_id)
    return forest


def components_without_vertex(
    g: Multigraph, tree: Iterable[int], v: int
) -> Dict[int, int]:
    """Component label of every vertex of T - v (labels are minimum vertices)."""
    uf = nx.utils.UnionFind([u for u in g.vertices if u != v])
    for eid in tree:
        e = g.edge(eid)
        if not e.touches(v):
            uf.union(e.tail, e.head)
    labels: Dict[int, int] = {}
    for u in g.vertices:
        if u == v:
            continue
        labels[u] = min(x for x in g.vertices if x != v and uf[x] == uf[u])
    return labels


def tree_degree(g: Multigraph, tree: Iterable[int], v: int) -> int:
    ids = set(tree)
    return sum(1 for e in g.incident(v) if e.edge_id in ids)


def leaves(g: Multigraph, tree: Iterable[int]) -> List[int]:
    ids = set(tree)
    return [v for v in g.vertices if tree_degree(g, ids, v) == 1]


def pack_two_spanning_trees(g: Multigraph) -> Optional[TreePair]:
    """Two disjoint spanning trees, or None when the graph has none."""
    if g.n == 0:
        raise InvalidInputError("empty graph")
    if g.n == 1:
        return TreePair.of([], [])
    if not g.is_connected() or g.m - len(g.loops()) < 2 * (g.n - 1):
        return None
    forests: Tuple[Set[int], Set[int]] = (set(), set())
    for e in g.edges:
        if e.is_loop:
            continue
        _insert(g, forests, e.edge_id)
        if all(len(f) == g.n - 1 for f in forests):
            break
    if all(len(f) == g.n - 1 for f in forests):
        pair = TreePair.of(forests[0], forests[1])
        logger.debug(f"packed two spanning trees: {sorted(pair.t1)} / {sorted(pair.t2)}")
        return pair
    return None


def _insert(g: Multigraph, forests: Tuple[Set[int], Set[int]], edge_id: int) -> bool:
    """Grow the union of the two forests by ``edge_id`` if an exchange path exists."""
    # label[y] = (x, i): y sits in forest i and may leave it to let x in
    label: Dict[int, Tuple[int, int]] = {}
    queue = deque([edge_id])
    visited = {edge_id}
    while queue:
        x = queue.popleft()
        e = g.edge(x)
        for i, forest in enumerate(forests):
            if x in forest:
                continue
            path = undirected_path(g, e.tail, e.head, forest)
            if path is None:
                _augment(forests, label, x, i, edge_id)
                return True
            for y, _ in path:
                if y not in visited:
                    visited.add(y)
                    label[y] = (x, i)
                    queue.append(y)
    return False


def _augment(
    forests: Tuple[Set[int], Set[int]],
    label: Dict[int, Tuple[int, int]],
    x: int,
    i: int,
    root: int,
) -> None:
    while True:
        current = next((j for j, f in enumerate(forests) if x in f), None)
        forests[i].add(x)
        if current is not None:
            forests[current].discard(x)
        if x == root:
            return
        parent, j = label[x]
        x, i = parent, j
