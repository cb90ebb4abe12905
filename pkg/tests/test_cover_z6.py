"""
Unit tests for anchored chain covers, the cover generator, the cubic family and
the Z2xZ3 pipeline.
"""

from dataclasses import replace

import pytest

from nzflows.census.counting import count_nz_flows, enumerate_nz_flows
from nzflows.domain.families import family_graph
from nzflows.domain.flow import is_nowhere_zero, validate_flow
from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import PreconditionError
from nzflows.generators.cover_z6 import (
    analyze_cubic,
    build_anchored_chain_cover,
    certified_cover_count,
    compute_even_anchor_subset,
    cubic_flow_family,
    generate_from_cover,
    plan_cover,
    special_sparse_zero_flow,
    toggled_flows,
    validate_cover,
)
from nzflows.generators.z6_pipeline import (
    contract_two_edge_cuts,
    prepare_z6,
    reduce_to_cubic,
    z6_bound,
    z6_flow_family,
    z6_guaranteed_bound,
)
from nzflows.graphs.connectivity import is_k_edge_connected
from nzflows.graphs.surgery import clique_expansion

Z2XZ3 = GroupSpec.z2xz3()

COVER_CORPUS = [
    "complete:4",
    "complete:5",
    "petersen",
    "tripled_triangle",
    "doubled_complete:4",
    "doubled_cycle:4",
    "complete_bipartite:3,3",
]

PIPELINE_CORPUS = [
    "complete:4",
    "complete:5",
    "petersen",
    "tripled_triangle",
    "complete_bipartite:3,3",
    "doubled_cycle:4",
    "cycle:5",
    "cycle_with_d_doubled:4,2",
]

# enumerating the census for a subset check is only done below this size
SUBSET_CHECK_LIMIT = 5000


def prism() -> Multigraph:
    return clique_expansion(family_graph("complete:4"), 0)[0]


def cubic_corpus():
    return [
        family_graph("complete:4"),
        family_graph("petersen"),
        prism(),
        family_graph("complete_bipartite:3,3"),
    ]


def assert_distinct_valid(g, flows):
    assert len({f.key() for f in flows}) == len(flows)
    for f in flows:
        assert validate_flow(g, f)
        assert is_nowhere_zero(f)


# ============================================================================
# TEST SUITE 1: Cover Construction
# ============================================================================


class TestChainCover:
    """Test suite for building and validating anchored chain covers."""

    @pytest.mark.parametrize("spec", COVER_CORPUS)
    def test_cover_is_valid(self, spec):
        """Every 3-edge-connected corpus graph gets a valid cover."""
        g = family_graph(spec)
        cover = build_anchored_chain_cover(g)
        assert validate_cover(g, cover)
        assert cover.chains[0].kind == "cycle"
        assert len(cover.anchors) == cover.k - 1

    def test_k4_cover(self, k4):
        """Triangle first, then vertex 3 anchored by two of its edges."""
        cover = build_anchored_chain_cover(k4)
        assert cover.k == 2
        assert cover.p == 1
        assert cover.anchors == ((2, 4),)
        assert cover.external == frozenset({5})
        assert cover.even_anchor_subset == frozenset()
        assert certified_cover_count(plan_cover(k4, cover)) == 6

    def test_petersen_certified_count(self, petersen):
        """The Petersen cover certifies 72 flows."""
        cover = build_anchored_chain_cover(petersen)
        assert certified_cover_count(plan_cover(petersen, cover)) == 72

    def test_cover_needs_three_edge_connectivity(self):
        """A cycle has 2-edge-cuts and gets no cover."""
        with pytest.raises(PreconditionError):
            build_anchored_chain_cover(family_graph("cycle:5"))

    def test_cover_needs_two_vertices(self):
        """A single vertex has nothing to cover."""
        with pytest.raises(PreconditionError):
            build_anchored_chain_cover(Multigraph.from_pairs(1, [(0, 0)]))

    def test_tampered_cover_is_rejected(self, k4):
        """Dropping the external edge breaks the partition of the edges."""
        cover = build_anchored_chain_cover(k4)
        broken = replace(cover, external=frozenset())
        assert not validate_cover(k4, broken)

    def test_even_anchor_subset_of_a_cycle(self, k4):
        """Anchors forming a triangle are all kept, a path adds nothing."""
        assert compute_even_anchor_subset(k4, [0, 1, 3]) == frozenset({0, 1, 3})
        assert compute_even_anchor_subset(k4, [0, 3, 5]) == frozenset()


# ============================================================================
# TEST SUITE 2: Cover Generation
# ============================================================================


class TestCoverGeneration:
    """Test suite for the flows a cover yields."""

    @pytest.mark.parametrize("spec", COVER_CORPUS)
    def test_generated_flows_meet_certified_count(self, spec):
        """Distinct valid nowhere-zero flows, at least the certified count."""
        g = family_graph(spec)
        cover = build_anchored_chain_cover(g)
        plan = plan_cover(g, cover)
        flows = list({f.key(): f for f in generate_from_cover(g, cover, None, plan)}.values())
        for f in flows:
            assert validate_flow(g, f)
            assert is_nowhere_zero(f)
        certified = certified_cover_count(plan)
        assert len(flows) >= certified >= cover.formula_bound().ceiling()

    def test_limit(self, k5):
        """The stream stops at the limit."""
        cover = build_anchored_chain_cover(k5)
        assert len(list(generate_from_cover(k5, cover, limit=3))) == 3

    @pytest.mark.parametrize("spec", COVER_CORPUS)
    def test_special_flow_is_nowhere_zero(self, spec):
        """The special flow is a valid nowhere-zero flow."""
        g = family_graph(spec)
        cover = build_anchored_chain_cover(g)
        special = special_sparse_zero_flow(g, cover)
        assert validate_flow(g, special)
        assert is_nowhere_zero(special)

    def test_special_flow_zeros_only_on_chain_edges(self, petersen):
        """Off the chains the Z3 part never vanishes."""
        cover = build_anchored_chain_cover(petersen)
        special = special_sparse_zero_flow(petersen, cover)
        for eid in petersen.edge_id_set - cover.chain_edge_ids:
            assert special.values[eid][1] != 0


# ============================================================================
# TEST SUITE 3: Cubic Graphs
# ============================================================================


class TestCubicFamily:
    """Test suite for the cubic analysis and the toggled flows."""

    @pytest.mark.parametrize("index", range(4))
    def test_cubic_identities(self, index):
        """|K| = n + p - k and q = n/2 + p - k."""
        g = cubic_corpus()[index]
        cover = build_anchored_chain_cover(g)
        special = special_sparse_zero_flow(g, cover)
        analysis = analyze_cubic(g, cover, special)
        assert len(analysis.K) == g.n + cover.p - cover.k
        assert analysis.q == g.n // 2 + cover.p - cover.k
        assert analysis.W_prime <= analysis.W

    @pytest.mark.parametrize("index", range(4))
    def test_toggled_flows(self, index):
        """Toggling gives exactly 2^|W - W'| distinct valid flows."""
        g = cubic_corpus()[index]
        cover = build_anchored_chain_cover(g)
        special = special_sparse_zero_flow(g, cover)
        analysis = analyze_cubic(g, cover, special)
        flows = list(toggled_flows(special, analysis, limit=None))
        assert len(flows) == 2 ** len(analysis.free_edges)
        assert_distinct_valid(g, flows)

    def test_analysis_needs_cubic(self, k5):
        """K5 is 4-regular."""
        cover = build_anchored_chain_cover(k5)
        with pytest.raises(PreconditionError):
            analyze_cubic(k5, cover, special_sparse_zero_flow(k5, cover))

    def test_cubic_family_on_petersen(self, petersen):
        """Distinct, valid and inside the census of 1920."""
        flows = list(cubic_flow_family(petersen, limit=None))
        assert_distinct_valid(petersen, flows)
        assert 72 <= len(flows) <= 1920


# ============================================================================
# TEST SUITE 4: Pipeline
# ============================================================================


class TestZ6Pipeline:
    """Test suite for the reductions and the end-to-end Z2xZ3 family."""

    def test_cycle_contracts_to_a_loop(self):
        """Every cycle collapses to one vertex with a loop."""
        contracted, trace = contract_two_edge_cuts(family_graph("cycle:5"))
        assert contracted.n == 1
        assert contracted.m == 1
        assert len(trace) == 4

    def test_three_edge_connected_graph_is_untouched(self, k4):
        """No 2-edge-cut, no contraction."""
        contracted, trace = contract_two_edge_cuts(k4)
        assert contracted is k4
        assert not trace.steps

    def test_prepare_separates_loops(self):
        """The loops of the contracted graph are set aside."""
        reduction = prepare_z6(family_graph("cycle:4"))
        assert reduction.core.n == 1
        assert reduction.core.m == 0
        assert len(reduction.loops) == 1

    def test_bridge_is_rejected(self):
        """Graphs with a bridge have no nowhere-zero flow to generate."""
        g = Multigraph.from_pairs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)])
        with pytest.raises(PreconditionError):
            list(z6_flow_family(g))

    def test_reduce_wheel_to_cubic(self):
        """The hub of the 4-wheel is lifted across and suppressed, leaving K4."""
        wheel = Multigraph.from_pairs(
            5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]
        )
        cubic, trace = reduce_to_cubic(wheel)
        assert cubic.n == 4
        assert cubic.is_cubic()
        assert is_k_edge_connected(cubic, 3)
        assert set(trace.kinds()) == {"lift", "suppress"}

    def test_cycle_family_is_the_census(self):
        """C5 has exactly five flows and the pipeline finds all of them."""
        g = family_graph("cycle:5")
        flows = list(z6_flow_family(g))
        assert len(flows) == 5
        assert_distinct_valid(g, flows)

    @pytest.mark.parametrize("spec", PIPELINE_CORPUS)
    def test_family_meets_bound_and_census(self, spec):
        """Distinct valid flows, at least the bound, at most the census."""
        g = family_graph(spec)
        flows = list(z6_flow_family(g))
        assert_distinct_valid(g, flows)
        assert len(flows) >= z6_guaranteed_bound(g)
        assert z6_bound(g).is_met_by(len(flows))
        census = count_nz_flows(g, Z2XZ3)
        assert len(flows) <= census
        if census <= SUBSET_CHECK_LIMIT:
            enumerated = {f.key() for f in enumerate_nz_flows(g, Z2XZ3)}
            assert {f.key() for f in flows} <= enumerated

    def test_limit(self, petersen):
        """The stream stops at the limit, and a zero limit yields nothing."""
        assert len(list(z6_flow_family(petersen, limit=10))) == 10
        assert list(z6_flow_family(petersen, limit=0)) == []

    def test_bound_uses_the_larger_exponent(self, petersen):
        """On Petersen n/7 beats 2(m - n)/9, so the bound is ceil(2^(10/7)) = 3."""
        assert z6_bound(petersen).ceiling() == 3


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
