"""
Exact Nowhere-Zero Flow Census

Flows are parameterized by their values on the co-tree of a spanning forest:
every co-tree edge closes a fundamental cycle and each tree edge's value is a
signed sum of the co-tree values whose cycles pass through it. Assignments are
explored depth-first in ascending co-tree edge id and pruned as soon as a tree
edge is fully determined and zero.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from nzflows.config import (
    CENSUS_RANK_CAP_LARGE_GROUP,
    CENSUS_RANK_CAP_SMALL_GROUP,
    SMALL_GROUP_ORDER,
)
from nzflows.domain.flow import Flow
from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import CensusCapExceededError
from nzflows.graphs.trees import spanning_forest
from nzflows.graphs.traversal import undirected_path


def default_rank_cap(group: GroupSpec) -> int:
    if group.order <= SMALL_GROUP_ORDER:
        return CENSUS_RANK_CAP_SMALL_GROUP
    return CENSUS_RANK_CAP_LARGE_GROUP


def check_census_cap(g: Multigraph, group: GroupSpec, rank_cap: Optional[int] = None) -> int:
    """Return the loopless cycle rank, raising when it exceeds the cap."""
    cap = default_rank_cap(group) if rank_cap is None else rank_cap
    rank = g.cycle_rank(include_loops=False)
    if rank > cap:
        raise CensusCapExceededError(
            f"cycle rank {rank} exceeds census cap {cap} for {group}; "
            "use flow_polynomial or sample"
        )
    return rank


@dataclass
class _CotreeSpace:
    group: GroupSpec
    tree: List[int]
    cotree: List[int]
    # per co-tree index: (tree index, sign) pairs
    cycles: List[List[Tuple[int, int]]]
    # per co-tree index: tree indices whose last contributor it is
    closing: List[List[int]]
    dead: bool

    @classmethod
    def build(cls, g: Multigraph, group: GroupSpec, include_loops: bool) -> "_CotreeSpace":
        tree = spanning_forest(g)
        in_tree = set(tree)
        tree_index = {eid: i for i, eid in enumerate(tree)}
        cotree = [
            e.edge_id
            for e in g.edges
            if e.edge_id not in in_tree and (include_loops or not e.is_loop)
        ]
        cycles: List[List[Tuple[int, int]]] = []
        last = [-1] * len(tree)
        for index, eid in enumerate(cotree):
            e = g.edge(eid)
            cycle: List[Tuple[int, int]] = []
            if not e.is_loop:
                path = undirected_path(g, e.head, e.tail, in_tree)
                assert path is not None
                for tid, direction in path:
                    cycle.append((tree_index[tid], direction))
                    last[tree_index[tid]] = index
            cycles.append(cycle)
        closing: List[List[int]] = [[] for _ in cotree]
        for t, index in enumerate(last):
            if index >= 0:
                closing[index].append(t)
        return cls(group, tree, cotree, cycles, closing, dead=-1 in last)

    def _tables(self):
        elements = self.group.elements()
        k = len(elements)
        add = [
            [self.group.index_of(self.group.add(a, b)) for b in elements] for a in elements
        ]
        neg = [self.group.index_of(self.group.neg(a)) for a in elements]
        return k, add, neg

    def count(self, first_values: Optional[Sequence[int]] = None) -> int:
        if self.dead:
            return 0
        k, add, neg = self._tables()
        tree_values = [0] * len(self.tree)
        cycles, closing = self.cycles, self.closing
        depth = len(self.cotree)

        def descend(index: int, choices: Sequence[int]) -> int:
            if index == depth:
                return 1
            total = 0
            for x in choices:
                minus = neg[x]
                for t, sign in cycles[index]:
                    tree_values[t] = add[tree_values[t]][x if sign == 1 else minus]
                if all(tree_values[t] != 0 for t in closing[index]):
                    total += descend(index + 1, range(1, k))
                for t, sign in cycles[index]:
                    tree_values[t] = add[tree_values[t]][minus if sign == 1 else x]
            return total

        if depth == 0:
            return 1
        return descend(0, range(1, k) if first_values is None else first_values)

    def enumerate(self, limit: Optional[int]) -> Iterator[Tuple[List[int], List[int]]]:
        """Yield (co-tree value indices, tree value indices) in ascending order."""
        if self.dead:
            return
        k, add, neg = self._tables()
        tree_values = [0] * len(self.tree)
        chosen: List[int] = []
        emitted = 0
        stack: List[Iterator[int]] = []
        depth = len(self.cotree)
        if depth == 0:
            if limit is None or limit > 0:
                yield [], list(tree_values)
            return
        stack.append(iter(range(1, k)))
        while stack:
            index = len(stack) - 1
            if len(chosen) > index:
                self._apply(chosen.pop(), index, tree_values, add, neg, undo=True)
            x = next(stack[-1], None)
            if x is None:
                stack.pop()
                continue
            self._apply(x, index, tree_values, add, neg, undo=False)
            chosen.append(x)
            if not all(tree_values[t] != 0 for t in self.closing[index]):
                continue
            if index + 1 == depth:
                yield list(chosen), list(tree_values)
                emitted += 1
                if limit is not None and emitted >= limit:
                    return
            else:
                stack.append(iter(range(1, k)))

    def _apply(self, x: int, index: int, tree_values, add, neg, undo: bool) -> None:
        minus = neg[x]
        for t, sign in self.cycles[index]:
            forward = x if sign == 1 else minus
            step = neg[forward] if undo else forward
            tree_values[t] = add[tree_values[t]][step]


def _count_with_first(g: Multigraph, group: GroupSpec, first: Sequence[int]) -> int:
    return _CotreeSpace.build(g, group, include_loops=False).count(first)


def count_nz_flows(
    g: Multigraph,
    group: GroupSpec,
    threads: int = 1,
    rank_cap: Optional[int] = None,
) -> int:
    """Exact number of nowhere-zero ``group``-flows on ``g``."""
    check_census_cap(g, group, rank_cap)
    loop_factor = (group.order - 1) ** len(g.loops())
    space = _CotreeSpace.build(g, group, include_loops=False)
    if space.dead:
        return 0
    if threads > 1 and space.cotree:
        values = list(range(1, group.order))
        chunks = [values[i::threads] for i in range(threads) if values[i::threads]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(_count_with_first, g, group, chunk) for chunk in chunks]
            core = sum(future.result() for future in futures)
    else:
        core = space.count()
    logger.debug(f"census {group} on n={g.n}, m={g.m}: {core * loop_factor}")
    return core * loop_factor


def enumerate_nz_flows(
    g: Multigraph,
    group: GroupSpec,
    limit: Optional[int] = None,
    rank_cap: Optional[int] = None,
) -> Iterator[Flow]:
    """Nowhere-zero flows in ascending order of their co-tree values."""
    check_census_cap(g, group, rank_cap)
    space = _CotreeSpace.build(g, group, include_loops=True)
    elements = group.elements()
    for cotree_values, tree_values in space.enumerate(limit):
        values = {eid: elements[x] for eid, x in zip(space.cotree, cotree_values)}
        values.update({eid: elements[x] for eid, x in zip(space.tree, tree_values)})
        yield Flow(group, values)
