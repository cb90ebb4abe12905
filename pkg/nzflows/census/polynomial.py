"""
Flow polynomial by deletion-contraction.

Works on a compact internal form (vertex count plus sorted endpoint pairs)
with loop, bridge, isolated-vertex and series reductions, memoized on a
degree-refined relabelling.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from pydantic import BaseModel, field_validator

from nzflows.config import POLYNOMIAL_EDGE_CAP
from nzflows.domain.graph import Multigraph
from nzflows.exceptions import CensusCapExceededError

Pairs = Tuple[Tuple[int, int], ...]


class FlowPolynomial(BaseModel):
    """Coefficients in ascending powers of k."""

    coefficients: List[int]

    @field_validator("coefficients")
    @classmethod
    def strip_trailing_zeros(cls, v):
        v = list(v)
        while v and v[-1] == 0:
            v.pop()
        return v

    def evaluate(self, k: int) -> int:
        total = 0
        for c in reversed(self.coefficients):
            total = total * k + c
        return total

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "FlowPolynomial":
        """Interpolate through (k, count) points with exact rational arithmetic."""
        from fractions import Fraction

        points = sorted(counts.items())
        result = [Fraction(0)] * len(points)
        for i, (xi, yi) in enumerate(points):
            basis = [Fraction(1)]
            denominator = Fraction(1)
            for j, (xj, _) in enumerate(points):
                if i == j:
                    continue
                basis = _mul(basis, [Fraction(-xj), Fraction(1)])
                denominator *= xi - xj
            for d, c in enumerate(basis):
                result[d] += c * yi / denominator
        if any(c.denominator != 1 for c in result):
            raise ValueError("counts are not interpolated by an integer polynomial")
        return cls(coefficients=[int(c) for c in result])

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for power in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            var = "" if power == 0 else ("k" if power == 1 else f"k^{power}")
            coeff = str(c) if (var == "" or abs(c) != 1) else ("-" if c < 0 else "")
            terms.append(f"{coeff}{var}")
        return " + ".join(terms).replace("+ -", "- ")


def _mul(a: Sequence, b: Sequence) -> List:
    out = [0 * a[0]] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _sub(a: Sequence[int], b: Sequence[int]) -> List[int]:
    size = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size)
    ]


_K_MINUS_ONE = (-1, 1)


def _has_bridge(n: int, edges: Pairs) -> bool:
    adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for index, (a, b) in enumerate(edges):
        adjacency[a].append((b, index))
        adjacency[b].append((a, index))
    order = [-1] * n
    low = [0] * n
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adjacency[root]))]
        while stack:
            v, via, neighbours = stack[-1]
            advanced = False
            for w, index in neighbours:
                if index == via:
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, index, iter(adjacency[w])))
                    advanced = True
                    break
                low[v] = min(low[v], order[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > order[parent]:
                    return True
    return False


def _simplify(n: int, edges: Pairs) -> Tuple[int, Pairs, int]:
    """Strip loops, series vertices and isolated vertices; returns the loop count."""
    loops = 0
    current = list(edges)
    while True:
        kept = [(a, b) for a, b in current if a != b]
        loops += len(current) - len(kept)
        current = kept
        degree = [0] * n
        for a, b in current:
            degree[a] += 1
            degree[b] += 1
        series = next((v for v in range(n) if degree[v] == 2), None)
        if series is None:
            break
        ends = [i for i, (a, b) in enumerate(current) if series in (a, b)]
        first, second = current[ends[0]], current[ends[1]]
        x = first[0] if first[1] == series else first[1]
        y = second[0] if second[1] == series else second[1]
        current = [p for i, p in enumerate(current) if i not in ends]
        current.append((min(x, y), max(x, y)))
    degree = [0] * n
    for a, b in current:
        degree[a] += 1
        degree[b] += 1
    alive = [v for v in range(n) if degree[v] > 0]
    index = {v: i for i, v in enumerate(alive)}
    relabelled = tuple((index[a], index[b]) for a, b in current)
    return len(alive), relabelled, loops


def _canonical_key(n: int, edges: Pairs) -> Tuple[int, Pairs]:
    neighbours: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        neighbours[a].append(b)
        neighbours[b].append(a)
    degree = [len(x) for x in neighbours]
    order = sorted(
        range(n),
        key=lambda v: (degree[v], sorted(degree[w] for w in neighbours[v]), v),
    )
    rank = {v: i for i, v in enumerate(order)}
    return n, tuple(
        sorted((min(rank[a], rank[b]), max(rank[a], rank[b])) for a, b in edges)
    )


class _DeletionContraction:
    def __init__(self) -> None:
        self.memo: Dict[Tuple[int, Pairs], List[int]] = {}
        self.calls = 0

    def solve(self, n: int, edges: Pairs) -> List[int]:
        self.calls += 1
        n, edges, loops = _simplify(n, edges)
        factor: List[int] = [1]
        for _ in range(loops):
            factor = _mul(factor, _K_MINUS_ONE)
        if not edges:
            return factor
        if _has_bridge(n, edges):
            return [0]
        key = _canonical_key(n, edges)
        if key not in self.memo:
            self.memo[key] = self._split(n, edges)
        return _mul(factor, self.memo[key])

    def _split(self, n: int, edges: Pairs) -> List[int]:
        a, b = edges[-1]
        rest = edges[:-1]
        deleted = self.solve(n, rest)
        # contract: b merged into a
        merged = tuple(
            (min(x, y), max(x, y))
            for x, y in ((a if p == b else p, a if q == b else q) for p, q in rest)
        )
        contracted = self.solve(n, merged)
        return _sub(contracted, deleted)


def flow_polynomial(g: Multigraph, edge_cap: Optional[int] = None) -> FlowPolynomial:
    """Flow polynomial of ``g``; evaluating at k gives the nowhere-zero Zk-flow count."""
    cap = POLYNOMIAL_EDGE_CAP if edge_cap is None else edge_cap
    if g.m > cap:
        raise CensusCapExceededError(f"{g.m} edges exceed the flow polynomial cap {cap}")
    pairs = tuple((min(e.tail, e.head), max(e.tail, e.head)) for e in g.edges)
    solver = _DeletionContraction()
    coefficients = solver.solve(g.n, pairs)
    logger.debug(f"flow polynomial: {solver.calls} calls, {len(solver.memo)} memo entries")
    return FlowPolynomial(coefficients=coefficients)
