"""
Unit tests for boundaries, beta-flows and the orientation extension search.
"""

import pytest

from nzflows.domain.families import family_graph
from nzflows.domain.graph import Multigraph
from nzflows.exceptions import (
    DomainMismatchError,
    InstanceTooLargeError,
    InvalidInputError,
    PreconditionError,
)
from nzflows.generators.boundary_z3 import (
    Boundary,
    OrientationState,
    balanced_preorientation,
    boundary_from_oriented_edges,
    check_extend_hypotheses,
    corollary_form,
    corollary_hypotheses_hold,
    extend_orientation_search,
    hypotheses_hold,
    iter_orientation_extensions,
    out_minus_in,
    sigma,
    verify_beta_flow,
)

# ============================================================================
# TEST SUITE 1: Boundaries and Sigma
# ============================================================================


class TestBoundary:
    """Test suite for boundary values and the sigma threshold."""

    def test_values_are_normalized(self):
        """Residues are reduced mod 3."""
        assert Boundary((4, -1, 0)).values == (1, 2, 0)

    def test_sum_must_vanish(self):
        """A boundary summing to a nonzero residue is rejected."""
        with pytest.raises(InvalidInputError):
            Boundary((1, 0, 0))

    def test_from_mapping(self):
        """Missing vertices default to zero."""
        beta = Boundary.from_mapping(4, {1: 1, 3: 2})
        assert beta.values == (0, 1, 0, 2)
        assert not beta.is_zero()

    @pytest.mark.parametrize(
        "beta,side,expected",
        [
            ((0, 0, 0, 0), [0], 7),
            ((0, 0, 0, 0), [0, 1], 4),
            ((1, 2, 0, 0), [0], 5),
            ((1, 2, 0, 0), [0, 2], 6),
        ],
    )
    def test_sigma_on_k4(self, k4, beta, side, expected):
        """Zero total: 4 on even cuts, 7 on odd; nonzero total: 6 even, 5 odd."""
        assert sigma(k4, Boundary(beta), side) == expected

    def test_sigma_needs_proper_subset(self, k4):
        """The whole vertex set is not a cut."""
        with pytest.raises(InvalidInputError):
            sigma(k4, Boundary.zero(4), [0, 1, 2, 3])


# ============================================================================
# TEST SUITE 2: Beta-Flows
# ============================================================================


class TestBetaFlows:
    """Test suite for beta-flow verification and induced boundaries."""

    def test_rotation_of_tripled_triangle(self, tripled_triangle):
        """All nine edges along the rotation: each vertex has +3 - 3 = 0."""
        orientation = {eid: 1 for eid in tripled_triangle.edge_ids}
        assert verify_beta_flow(tripled_triangle, orientation, Boundary.zero(3))

    def test_single_reversal_breaks_the_flow(self, tripled_triangle):
        """Reversing one edge moves its ends off zero."""
        orientation = {eid: 1 for eid in tripled_triangle.edge_ids}
        orientation[0] = -1
        assert not verify_beta_flow(tripled_triangle, orientation, Boundary.zero(3))

    def test_orientation_must_cover_the_graph(self, triangle):
        """A partial orientation is a domain error."""
        with pytest.raises(DomainMismatchError):
            verify_beta_flow(triangle, {0: 1}, Boundary.zero(3))

    def test_boundary_from_removed_edge(self, triangle):
        """Orienting edge 0 forward leaves the path 1 -> 2 -> 0 as a beta-flow."""
        beta = boundary_from_oriented_edges(triangle, {0: 1})
        assert beta.values == (2, 1, 0)
        rest = triangle.without_edges([0])
        assert verify_beta_flow(rest, {1: 1, 2: 1}, beta)

    def test_out_minus_in_ignores_loops(self):
        """Loops add nothing to the excess."""
        g = Multigraph.from_pairs(2, [(0, 0), (0, 1)])
        assert out_minus_in(g, {0: 1, 1: 1}) == [1, -1]


# ============================================================================
# TEST SUITE 3: Preorientations
# ============================================================================


class TestPreorientation:
    """Test suite for balanced preorientations and the corollary form."""

    @pytest.mark.parametrize("spec,v", [("tripled_triangle", 0), ("doubled_complete:4", 2), ("cycle:5", 1)])
    def test_balanced(self, spec, v):
        """The preorientation covers the edges at v with excess 0 mod 3."""
        g = family_graph(spec)
        pre = balanced_preorientation(g, v)
        assert set(pre) == {e.edge_id for e in g.non_loop_incident(v)}
        assert out_minus_in(g, pre)[v] % 3 == 0

    def test_degree_one_has_no_balance(self):
        """A pendant vertex cannot be balanced."""
        g = Multigraph.from_pairs(3, [(0, 1), (1, 2), (2, 1)])
        with pytest.raises(PreconditionError):
            balanced_preorientation(g, 0)

    def test_corollary_form_on_tripled_triangle(self, tripled_triangle):
        """Reversing edge 0 moves 2 to v and makes the hypotheses hold."""
        pre = balanced_preorientation(tripled_triangle, 0)
        zero = Boundary.zero(3)
        assert not check_extend_hypotheses(tripled_triangle, zero, 0)[0]
        form = corollary_form(tripled_triangle, zero, 0, pre)
        assert form.reversed_edge == 0
        assert form.preorientation[0] == -pre[0]
        assert form.beta.values == (2, 1, 0)
        assert check_extend_hypotheses(tripled_triangle, form.beta, 0) == (True, None)

    def test_corollary_form_needs_degree_six_or_seven(self, k4):
        """K4 vertices have degree 3."""
        with pytest.raises(PreconditionError):
            corollary_form(k4, Boundary.zero(4), 0, {0: 1, 1: 1, 2: 1})

    def test_corollary_hypotheses(self, tripled_triangle, k4):
        """6-edge-connected with deg(v) <= 7 and beta(v) = 0."""
        assert corollary_hypotheses_hold(tripled_triangle, Boundary.zero(3), 0)
        assert not corollary_hypotheses_hold(k4, Boundary.zero(4), 0)


# ============================================================================
# TEST SUITE 4: Extension Hypotheses and Search
# ============================================================================


class TestExtensionSearch:
    """Test suite for the hypothesis scan and the backtracking search."""

    def test_cycle_fails_the_cut_condition(self):
        """In C4 the set {0, 1} has cut degree 2 below sigma = 4."""
        c4 = family_graph("cycle:4")
        ok, witness = check_extend_hypotheses(c4, Boundary.zero(4), 0)
        assert not ok
        assert witness == frozenset({0, 1})
        assert not hypotheses_hold(c4, Boundary.zero(4), 0)

    def test_scan_size_cap(self, k5):
        """The exhaustive scan refuses graphs above its vertex limit."""
        with pytest.raises(InstanceTooLargeError):
            check_extend_hypotheses(k5, Boundary.zero(5), 0, max_vertices=4)

    def test_two_extensions_of_tripled_triangle(self, tripled_triangle):
        """With every edge at 0 pointing in, vertex 1 sends all or none of its edges to 2."""
        pre = balanced_preorientation(tripled_triangle, 0)
        zero = Boundary.zero(3)
        state = OrientationState.from_fixed(tripled_triangle, pre)
        found = list(iter_orientation_extensions(tripled_triangle, zero, state))
        assert len(found) == 2
        for orientation in found:
            assert verify_beta_flow(tripled_triangle, orientation, zero)
            assert all(orientation[eid] == pre[eid] for eid in pre)

    def test_first_extension(self, triangle):
        """The search returns the constant rotation first."""
        state = OrientationState.from_fixed(triangle, {0: 1})
        assert extend_orientation_search(triangle, Boundary.zero(3), state) == {0: 1, 1: 1, 2: 1}

    def test_no_extension(self, triangle):
        """A boundary-zero triangle has no flow against a fixed edge pair."""
        state = OrientationState.from_fixed(triangle, {0: 1, 1: -1})
        assert extend_orientation_search(triangle, Boundary.zero(3), state) is None

    def test_free_edge_cap(self, tripled_triangle):
        """Exhaustive enumeration is capped by the number of free edges."""
        state = OrientationState.from_fixed(tripled_triangle, {})
        with pytest.raises(InstanceTooLargeError):
            iter_orientation_extensions(tripled_triangle, Boundary.zero(3), state, free_cap=4)

    def test_node_budget(self, doubled_k4):
        """A tiny node budget stops the search."""
        state = OrientationState.from_fixed(doubled_k4, {})
        with pytest.raises(InstanceTooLargeError):
            list(iter_orientation_extensions(doubled_k4, Boundary.zero(4), state, node_budget=3))

    def test_state_rejects_unknown_edges_and_signs(self, triangle):
        """Fixed edges must exist and carry +1 or -1."""
        with pytest.raises(DomainMismatchError):
            OrientationState.from_fixed(triangle, {7: 1})
        with pytest.raises(InvalidInputError):
            OrientationState.from_fixed(triangle, {0: 0})


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
