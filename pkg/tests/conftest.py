"""
Pytest configuration file.

Puts the project root on the Python path (so `nzflows` and `commands` import
without installation) and provides the benchmark corpus as fixtures.
"""

import sys
from pathlib import Path

import pytest

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from nzflows.domain.families import family_graph  # noqa: E402
from nzflows.domain.graph import Multigraph  # noqa: E402


@pytest.fixture
def triangle() -> Multigraph:
    return Multigraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def k4() -> Multigraph:
    return family_graph("complete:4")


@pytest.fixture
def k5() -> Multigraph:
    return family_graph("complete:5")


@pytest.fixture
def petersen() -> Multigraph:
    return family_graph("petersen")


@pytest.fixture
def tripled_triangle() -> Multigraph:
    return family_graph("tripled_triangle")


@pytest.fixture
def doubled_k4() -> Multigraph:
    return family_graph("doubled_complete:4")


@pytest.fixture
def theta() -> Multigraph:
    """Two vertices joined by three parallel edges."""
    return Multigraph.from_pairs(2, [(0, 1), (0, 1), (0, 1)])


@pytest.fixture
def k33() -> Multigraph:
    return family_graph("complete_bipartite:3,3")
