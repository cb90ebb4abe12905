"""
Benchmark Graph Families

Deterministic constructions for the standard test corpus plus a seeded random
k-edge-connected multigraph. Every build asserts the connectivity its family
promises before returning.
"""

import math
import random
from dataclasses import dataclass
from typing import Callable, ClassVar, Dict, List, Optional, Tuple

import networkx as nx
from loguru import logger
from pydantic import BaseModel, field_validator

from nzflows.config import RANDOM_FAMILY_MAX_ATTEMPTS
from nzflows.domain.graph import Multigraph
from nzflows.exceptions import FamilyError, InvalidInputError
from nzflows.graphs.connectivity import edge_connectivity, is_k_edge_connected

Pairs = List[Tuple[int, int]]


class FamilySpec(BaseModel):
    """A family name with its integer parameters, e.g. ``complete:5``."""

    # name -> (minimum parameter count, maximum parameter count)
    ARITY: ClassVar[Dict[str, Tuple[int, int]]] = {
        "cycle": (1, 1),
        "doubled_cycle": (1, 1),
        "cycle_with_d_doubled": (2, 2),
        "tripled_triangle": (0, 0),
        "complete": (1, 1),
        "complete_bipartite": (2, 2),
        "petersen": (0, 0),
        "doubled_complete": (1, 1),
        "random_k_ec": (2, 3),
    }

    name: str
    params: List[int] = []
    seed: int = 0

    @field_validator("name")
    @classmethod
    def validate_name(cls, v):
        key = v.strip().lower()
        if key not in cls.ARITY:
            raise InvalidInputError(
                f"Unknown family '{v}'; expected one of {', '.join(sorted(cls.ARITY))}"
            )
        return key

    @field_validator("params")
    @classmethod
    def validate_params(cls, v):
        if any(p < 0 for p in v):
            raise InvalidInputError(f"Family parameters must be non-negative: {v}")
        return list(v)

    def model_post_init(self, __context) -> None:
        low, high = self.ARITY[self.name]
        if not low <= len(self.params) <= high:
            raise InvalidInputError(
                f"Family {self.name} takes {low}..{high} parameters, got {len(self.params)}"
            )

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "FamilySpec":
        """Parse ``name`` or ``name:p1,p2,...``."""
        name, _, rest = text.strip().partition(":")
        params: List[int] = []
        if rest.strip():
            try:
                params = [int(token) for token in rest.split(",")]
            except ValueError:
                raise InvalidInputError(f"Family parameters must be integers: '{rest}'") from None
        return cls(name=name, params=params, seed=seed)

    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}:{','.join(str(p) for p in self.params)}"


@dataclass(frozen=True)
class FamilyBuild:
    spec: FamilySpec
    graph: Multigraph
    connectivity: int
    attempts: int = 1


def _cycle_pairs(n: int, multiplicities: List[int]) -> Pairs:
    pairs: Pairs = []
    for i in range(n):
        pairs.extend([(i, (i + 1) % n)] * multiplicities[i])
    return pairs


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FamilyError(message)


def _cycle(params: List[int]) -> Tuple[int, Pairs, int]:
    (n,) = params
    _require(n >= 2, "cycle needs n >= 2")
    return n, _cycle_pairs(n, [1] * n), 2


def _doubled_cycle(params: List[int]) -> Tuple[int, Pairs, int]:
    (n,) = params
    _require(n >= 2, "doubled_cycle needs n >= 2")
    return n, _cycle_pairs(n, [2] * n), 4


def _cycle_with_d_doubled(params: List[int]) -> Tuple[int, Pairs, int]:
    n, d = params
    _require(n >= 2, "cycle_with_d_doubled needs n >= 2")
    _require(d <= n, f"cannot double {d} edges of a {n}-cycle")
    return n, _cycle_pairs(n, [2] * d + [1] * (n - d)), 4 if d == n else 2


def _tripled_triangle(params: List[int]) -> Tuple[int, Pairs, int]:
    return 3, _cycle_pairs(3, [3, 3, 3]), 6


def _complete(params: List[int]) -> Tuple[int, Pairs, int]:
    (n,) = params
    _require(n >= 2, "complete needs n >= 2")
    return n, [(u, w) for u in range(n) for w in range(u + 1, n)], n - 1


def _complete_bipartite(params: List[int]) -> Tuple[int, Pairs, int]:
    a, b = params
    _require(a >= 1 and b >= 1, "complete_bipartite needs both sides non-empty")
    return a + b, [(u, a + w) for u in range(a) for w in range(b)], min(a, b)


def _petersen(params: List[int]) -> Tuple[int, Pairs, int]:
    graph = nx.petersen_graph()
    pairs = sorted((min(u, w), max(u, w)) for u, w in graph.edges())
    return graph.number_of_nodes(), pairs, 3


def _doubled_complete(params: List[int]) -> Tuple[int, Pairs, int]:
    n, pairs, k = _complete(params)
    return n, [p for p in pairs for _ in range(2)], 2 * k


_BUILDERS: Dict[str, Callable[[List[int]], Tuple[int, Pairs, int]]] = {
    "cycle": _cycle,
    "doubled_cycle": _doubled_cycle,
    "cycle_with_d_doubled": _cycle_with_d_doubled,
    "tripled_triangle": _tripled_triangle,
    "complete": _complete,
    "complete_bipartite": _complete_bipartite,
    "petersen": _petersen,
    "doubled_complete": _doubled_complete,
}


def _random_k_ec(spec: FamilySpec, max_attempts: int) -> FamilyBuild:
    """Loopless random multigraph with ``m`` uniform edges, resampled until k-edge-connected.

    Parameters are ``n, k`` and optionally ``m`` (default ceil(k*n/2) + n).
    """
    n, k = spec.params[0], spec.params[1]
    _require(n >= 2, "random_k_ec needs n >= 2")
    _require(k >= 1, "random_k_ec needs k >= 1")
    floor = math.ceil(k * n / 2)
    m = spec.params[2] if len(spec.params) == 3 else floor + n
    _require(m >= floor, f"{m} edges cannot make a {k}-edge-connected graph on {n} vertices")
    rng = random.Random(spec.seed)
    for attempt in range(1, max_attempts + 1):
        pairs = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
        g = Multigraph.from_pairs(n, pairs)
        if min(g.degrees()) >= k and is_k_edge_connected(g, k):
            logger.debug(f"random_k_ec(n={n}, k={k}, m={m}) succeeded after {attempt} attempts")
            return FamilyBuild(spec, g, edge_connectivity(g)[0], attempt)
    raise FamilyError(
        f"no {k}-edge-connected sample with n={n}, m={m} in {max_attempts} attempts"
    )


def make_family(spec: FamilySpec, max_attempts: Optional[int] = None) -> FamilyBuild:
    """Build a family graph and assert its declared edge connectivity."""
    if spec.name == "random_k_ec":
        return _random_k_ec(spec, max_attempts or RANDOM_FAMILY_MAX_ATTEMPTS)
    n, pairs, declared = _BUILDERS[spec.name](spec.params)
    g = Multigraph.from_pairs(n, pairs)
    actual = edge_connectivity(g)[0]
    if actual < declared:
        raise FamilyError(
            f"{spec.label()} is only {actual}-edge-connected, expected {declared}"
        )
    logger.debug(f"built {spec.label()}: n={g.n}, m={g.m}, edge connectivity {actual}")
    return FamilyBuild(spec, g, actual)


def family_graph(text: str, seed: int = 0) -> Multigraph:
    return make_family(FamilySpec.parse(text, seed)).graph
