"""
Unit tests for nzflows.graphs.connectivity and nzflows.graphs.trees.
"""

import pytest
from hypothesis import assume, given, settings

from graph_strategies import multigraphs
from nzflows.domain.families import family_graph
from nzflows.domain.graph import Multigraph
from nzflows.exceptions import PreconditionError
from nzflows.graphs.connectivity import (
    CutCertificate,
    bridges,
    cai_bound_holds,
    count_degree,
    edge_connectivity,
    find_6splittable_pair,
    find_small_nontrivial_cut,
    find_splittable_pair,
    find_splittable_pair_preserving_k,
    find_two_edge_cut,
    is_6_splittable,
    is_k_edge_connected,
    is_minimally_k_edge_connected,
    leaf_2ec_component,
    local_edge_connectivity,
    maximal_removable_set,
    minimum_st_cut,
    preserves_local_connectivity,
)
from nzflows.graphs.surgery import clique_expansion, lift_pair
from nzflows.graphs.trees import (
    TreePair,
    is_spanning_tree,
    is_valid_tree_pair,
    pack_two_spanning_trees,
    spanning_forest,
)

# two triangles joined by the bridge 2-3
BARBELL = Multigraph.from_pairs(
    6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]
)

SPLITTING_CORPUS = [
    "complete:5",
    "tripled_triangle",
    "doubled_complete:4",
    "doubled_cycle:5",
    "complete_bipartite:4,4",
    "cycle_with_d_doubled:4,2",
]

# ============================================================================
# TEST SUITE 1: Edge Connectivity
# ============================================================================


class TestEdgeConnectivity:
    """Test suite for global and local edge connectivity."""

    @pytest.mark.parametrize(
        "spec,expected",
        [
            ("complete:4", 3),
            ("complete:5", 4),
            ("petersen", 3),
            ("doubled_cycle:5", 4),
            ("tripled_triangle", 6),
            ("doubled_complete:4", 6),
            ("cycle:6", 2),
        ],
    )
    def test_corpus_values(self, spec, expected):
        """Edge connectivity of the benchmark families."""
        value, certificate = edge_connectivity(family_graph(spec))
        assert value == expected
        assert certificate.size == expected

    def test_certificate_is_a_real_cut(self, petersen):
        """The minimum cut certificate matches the graph."""
        value, certificate = edge_connectivity(petersen)
        assert certificate.is_valid_for(petersen)
        assert petersen.cut_degree(certificate.side) == value

    def test_disconnected_graph(self):
        """Disconnected graphs have connectivity 0."""
        g = Multigraph.from_pairs(4, [(0, 1), (2, 3)])
        value, certificate = edge_connectivity(g)
        assert value == 0
        assert certificate.size == 0

    def test_local_connectivity_counts_parallel_edges(self, theta):
        """Three parallel edges give lambda(0, 1) = 3."""
        assert local_edge_connectivity(theta, 0, 1) == 3

    def test_minimum_st_cut_side_contains_sources(self, k4):
        """The certificate side holds the sources and not the sinks."""
        value, certificate = minimum_st_cut(k4, [0, 1], [3])
        assert value == 3
        assert {0, 1} <= certificate.side
        assert 3 not in certificate.side

    @settings(max_examples=40, deadline=None)
    @given(multigraphs(max_vertices=5, max_edges=10))
    def test_connectivity_bounded_by_min_degree(self, g):
        """lambda never exceeds the minimum non-loop degree."""
        assume(g.n >= 2)
        value, certificate = edge_connectivity(g)
        assert value <= min(g.non_loop_degree(v) for v in g.vertices)
        assert certificate.size == value
        assert is_k_edge_connected(g, value)


# ============================================================================
# TEST SUITE 2: Bridges and 2-Edge-Cuts
# ============================================================================


class TestCuts:
    """Test suite for bridges, 2-edge-cuts and small cut search."""

    def test_bridges(self):
        """The barbell has exactly one bridge."""
        assert bridges(BARBELL) == [3]

    def test_two_edge_cut_in_cycle(self):
        """In C4 the first edge pairs with the next one."""
        c4 = family_graph("cycle:4")
        assert find_two_edge_cut(c4) == (0, 1)

    def test_no_two_edge_cut_in_k4(self, k4):
        """K4 is 3-edge-connected."""
        assert find_two_edge_cut(k4) is None

    def test_leaf_component(self):
        """With nothing covered, the lowest leaf block is returned."""
        assert leaf_2ec_component(BARBELL, []) == [0, 1, 2]
        assert leaf_2ec_component(BARBELL, [0, 1, 2]) == [3, 4, 5]

    def test_small_nontrivial_cut_in_prism(self, k4):
        """The 6-vertex prism has a 3-edge cut separating its triangles."""
        prism, _ = clique_expansion(k4, 0)
        certificate = find_small_nontrivial_cut(prism, 3, 0)
        assert certificate is not None
        assert 0 not in certificate.side
        assert 2 <= len(certificate.side) <= prism.n - 2
        assert certificate.size <= 3

    def test_small_cut_needs_four_vertices(self, tripled_triangle):
        """Graphs with fewer than four vertices have no nontrivial cut."""
        assert find_small_nontrivial_cut(tripled_triangle, 100, 0) is None


# ============================================================================
# TEST SUITE 3: Splitting Off
# ============================================================================


class TestSplitting:
    """Test suite for splittable pairs."""

    @pytest.mark.parametrize("spec", SPLITTING_CORPUS)
    def test_splittable_pair_at_every_eligible_vertex(self, spec):
        """Every eligible vertex has a verified splittable pair."""
        g = family_graph(spec)
        cut_edges = set(bridges(g))
        for v in g.vertices:
            degree = g.non_loop_degree(v)
            if degree == 3 or degree < 2:
                continue
            if any(e.edge_id in cut_edges for e in g.non_loop_incident(v)):
                continue
            e1, e2 = find_splittable_pair(g, v)
            assert preserves_local_connectivity(g, v, e1, e2)

    def test_degree_three_is_not_eligible(self, k4):
        """Mader's lemma does not cover degree 3."""
        with pytest.raises(PreconditionError):
            find_splittable_pair(k4, 0)

    @pytest.mark.parametrize("spec,k", [("doubled_complete:4", 4), ("complete:5", 2)])
    def test_preserving_k(self, spec, k):
        """The lifted graph stays k-edge-connected."""
        g = family_graph(spec)
        e1, e2 = find_splittable_pair_preserving_k(g, 0, k)
        lifted, _ = lift_pair(g, 0, e1, e2)
        assert is_k_edge_connected(lifted, k)

    def test_six_splittable_pair(self, tripled_triangle):
        """Lifting one 0-1 and one 0-2 edge keeps all other cuts at 6."""
        ok, certificate = is_6_splittable(tripled_triangle, 0, 0, 6)
        assert ok
        assert certificate is None

    def test_six_splittable_blocked(self, tripled_triangle):
        """Lifting two parallel edges leaves a small cut at their far end."""
        ok, certificate = is_6_splittable(tripled_triangle, 0, 0, 1)
        assert not ok
        assert 0 not in certificate.side
        assert certificate.size <= 7

    @pytest.mark.parametrize("spec", ["tripled_triangle", "doubled_complete:4", "complete:7"])
    def test_find_six_splittable_pair(self, spec):
        """Distinct-neighbour pairs split off at vertex 0 of the 6-edge-connected corpus."""
        g = family_graph(spec)
        found = find_6splittable_pair(g, 0)
        assert not isinstance(found, CutCertificate)
        e1, e2 = found
        assert is_6_splittable(g, 0, e1, e2)[0]
        assert g.edge(e1).other(0) != g.edge(e2).other(0)

    def test_find_six_splittable_pair_blocked(self, tripled_triangle):
        """With only parallel pairs left the first blocking cut comes back."""
        found = find_6splittable_pair(tripled_triangle, 0, excluding=[6, 7, 8])
        assert isinstance(found, CutCertificate)
        assert 0 not in found.side
        assert tripled_triangle.cut_degree(found.side) <= 7

    def test_find_six_splittable_pair_restricted(self, tripled_triangle):
        """Restricting the candidates to one pair gives that pair or its cut."""
        assert find_6splittable_pair(tripled_triangle, 0, pairs=[(1, 7)]) == (1, 7)
        blocked = find_6splittable_pair(tripled_triangle, 0, pairs=[(0, 2)])
        assert isinstance(blocked, CutCertificate)

    def test_find_six_splittable_pair_needs_candidates(self, tripled_triangle):
        """Excluding every edge at the vertex leaves nothing to split."""
        with pytest.raises(PreconditionError):
            find_6splittable_pair(tripled_triangle, 0, excluding=[0, 1, 2, 6, 7, 8])


# ============================================================================
# TEST SUITE 4: Minimal Connectivity
# ============================================================================


class TestMinimalConnectivity:
    """Test suite for removable sets and the degree-count check."""

    def test_complete_graphs_are_minimal(self, k4, k5):
        """Every edge of K4 and K5 is critical."""
        assert is_minimally_k_edge_connected(k4, 3)
        assert is_minimally_k_edge_connected(k5, 4)

    def test_removable_set_is_maximal(self, doubled_k4):
        """After removing F the graph is minimally 3-edge-connected."""
        removed = maximal_removable_set(doubled_k4, 3)
        remaining = doubled_k4.without_edges(removed)
        assert is_minimally_k_edge_connected(remaining, 3)

    def test_cai_bound_on_k7(self):
        """K7 is minimally 6-edge-connected with all seven vertices of degree 6."""
        k7 = family_graph("complete:7")
        assert is_minimally_k_edge_connected(k7, 6)
        assert cai_bound_holds(k7)

    @pytest.mark.parametrize("spec,n", [("tripled_triangle", 8), ("doubled_complete:4", 9)])
    def test_cai_bound_after_clique_expansion(self, spec, n):
        """Expanding a degree-6 vertex of a 6-edge-connected multigraph keeps it minimal."""
        g = family_graph(spec)
        expanded, step = clique_expansion(g, 0)
        assert expanded.n == n
        assert len(step.new_vertices) == 6
        assert is_k_edge_connected(expanded, 6)
        removable = maximal_removable_set(expanded, 6)
        assert removable == []
        minimal = expanded.without_edges(removable)
        assert is_minimally_k_edge_connected(minimal, 6)
        assert count_degree(minimal, 6) == n
        assert cai_bound_holds(minimal)


# ============================================================================
# TEST SUITE 5: Spanning Trees
# ============================================================================


class TestSpanningTrees:
    """Test suite for spanning forests and two-tree packing."""

    def test_spanning_forest_of_k4(self, k4):
        """The greedy forest takes the first three edges at vertex 0."""
        forest = spanning_forest(k4)
        assert forest == [0, 1, 2]
        assert is_spanning_tree(k4, forest)

    @pytest.mark.parametrize(
        "spec", ["complete:4", "complete:5", "doubled_cycle:4", "doubled_complete:4"]
    )
    def test_packing_finds_two_trees(self, spec):
        """Graphs with enough edges and connectivity pack two trees."""
        g = family_graph(spec)
        pair = pack_two_spanning_trees(g)
        assert pair is not None
        assert is_valid_tree_pair(g, pair)

    def test_petersen_has_no_two_trees(self, petersen):
        """15 edges cannot hold two 9-edge trees."""
        assert pack_two_spanning_trees(petersen) is None

    def test_pair_key_is_unordered(self):
        """Swapping the trees keeps the key."""
        pair = TreePair.of([0, 1], [2, 3])
        assert pair.key() == pair.swapped().key()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
