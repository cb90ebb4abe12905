"""
Unit tests for the exact census: co-tree counting, enumeration and the flow
polynomial.
"""

import pytest
from hypothesis import given, settings

from graph_strategies import multigraphs
from nzflows.census.counting import count_nz_flows, enumerate_nz_flows
from nzflows.census.polynomial import FlowPolynomial, flow_polynomial
from nzflows.domain.families import family_graph
from nzflows.domain.flow import is_nowhere_zero, validate_flow
from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import CensusCapExceededError

Z3 = GroupSpec.cyclic(3)
Z4 = GroupSpec.cyclic(4)
Z6 = GroupSpec.cyclic(6)
Z2XZ2 = GroupSpec.z2xz2()
Z2XZ3 = GroupSpec.z2xz3()

PETERSEN_POLYNOMIAL = [240, -620, 624, -325, 95, -15, 1]

# ============================================================================
# TEST SUITE 1: Counting
# ============================================================================


class TestCountNzFlows:
    """Test suite for exact nowhere-zero flow counts."""

    @pytest.mark.parametrize("n", [3, 4, 7])
    @pytest.mark.parametrize("k", [2, 3, 5, 6])
    def test_cycle(self, n, k):
        """A cycle has exactly k - 1 nowhere-zero Zk-flows."""
        assert count_nz_flows(family_graph(f"cycle:{n}"), GroupSpec.cyclic(k)) == k - 1

    @pytest.mark.parametrize(
        "n,d", [(n, d) for n in range(3, 9) for d in range(0, 5) if d < n]
    )
    def test_cycle_with_doubled_edges(self, n, d):
        """An n-cycle with d < n doubled edges has 5 * 4^d nowhere-zero Z2xZ3-flows."""
        g = family_graph(f"cycle_with_d_doubled:{n},{d}")
        assert count_nz_flows(g, Z2XZ3) == 5 * 4**d

    @pytest.mark.parametrize("n", range(3, 7))
    def test_doubled_cycle(self, n):
        """The fully doubled n-cycle has 5^n + 5 * 4^n nowhere-zero Z2xZ3-flows.

        With no single edge left the value around the cycle may be zero, which
        adds 5^n flows to the 5 * 4^n with a nonzero cycle value.
        """
        g = family_graph(f"doubled_cycle:{n}")
        assert count_nz_flows(g, Z2XZ3) == 5**n + 5 * 4**n
        assert flow_polynomial(g).evaluate(6) == 5**n + 5 * 4**n

    def test_k4(self, k4):
        """K4: 60 for order 6, 6 for order 4, none for Z3."""
        assert count_nz_flows(k4, Z2XZ3) == 60
        assert count_nz_flows(k4, Z6) == 60
        assert count_nz_flows(k4, Z2XZ2) == 6
        assert count_nz_flows(k4, Z4) == 6
        assert count_nz_flows(k4, Z3) == 0

    def test_petersen(self, petersen):
        """The Petersen graph has no nowhere-zero 4-flow."""
        assert count_nz_flows(petersen, Z2XZ2) == 0
        assert count_nz_flows(petersen, Z2XZ3) == 1920

    def test_bridge_kills_every_flow(self):
        """A graph with a bridge has no nowhere-zero flow."""
        g = Multigraph.from_pairs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)])
        assert count_nz_flows(g, Z2XZ3) == 0

    def test_loops_are_free_factors(self):
        """Each loop multiplies the count by |G| - 1."""
        g = Multigraph.from_pairs(2, [(0, 1), (0, 1), (0, 0), (1, 1)])
        assert count_nz_flows(g, Z3) == 2 * 2 * 2

    def test_threads_do_not_change_the_count(self, k5):
        """Splitting the first co-tree edge across workers gives the same total."""
        assert count_nz_flows(k5, Z2XZ3, threads=3) == count_nz_flows(k5, Z2XZ3)

    def test_cap_exceeded(self):
        """K8 has cycle rank 21, above every default cap."""
        with pytest.raises(CensusCapExceededError, match="flow_polynomial"):
            count_nz_flows(family_graph("complete:8"), Z3)


# ============================================================================
# TEST SUITE 2: Enumeration
# ============================================================================


class TestEnumerateNzFlows:
    """Test suite for the canonical flow stream."""

    def test_triangle_z3(self, triangle):
        """Only the two constant flows."""
        flows = list(enumerate_nz_flows(triangle, Z3))
        assert len(flows) == 2
        assert {f.values[0] for f in flows} == {(1,), (2,)}

    def test_k4_z2xz3(self, k4):
        """60 distinct valid flows."""
        flows = list(enumerate_nz_flows(k4, Z2XZ3))
        assert len(flows) == 60
        assert len({f.key() for f in flows}) == 60
        assert all(validate_flow(k4, f) and is_nowhere_zero(f) for f in flows)

    def test_petersen_z2xz2_is_empty(self, petersen):
        """The snark yields nothing."""
        assert list(enumerate_nz_flows(petersen, Z2XZ2)) == []

    def test_limit(self, k4):
        """The stream stops at the limit."""
        assert len(list(enumerate_nz_flows(k4, Z2XZ3, limit=7))) == 7

    def test_loops_enumerated(self):
        """Loop values range over the nonzero elements."""
        g = Multigraph.from_pairs(1, [(0, 0)])
        flows = list(enumerate_nz_flows(g, Z2XZ3))
        assert len(flows) == 5


# ============================================================================
# TEST SUITE 3: Flow Polynomial
# ============================================================================


class TestFlowPolynomial:
    """Test suite for deletion-contraction."""

    def test_cycle(self):
        """p(k) = k - 1."""
        assert flow_polynomial(family_graph("cycle:5")).coefficients == [-1, 1]

    def test_k4(self, k4):
        """p(k) = (k - 1)(k - 2)(k - 3)."""
        p = flow_polynomial(k4)
        assert p.coefficients == [-6, 11, -6, 1]
        assert (p.evaluate(3), p.evaluate(4), p.evaluate(6)) == (0, 6, 60)

    def test_petersen(self, petersen):
        """Zero at 1..4, 240 at 5."""
        p = flow_polynomial(petersen)
        assert p.coefficients == PETERSEN_POLYNOMIAL
        assert p.evaluate(5) == 240

    def test_bridge_gives_zero_polynomial(self):
        """Any bridge makes the polynomial vanish."""
        g = Multigraph.from_pairs(2, [(0, 1)])
        assert flow_polynomial(g).is_zero()

    def test_edge_cap(self):
        """K8 has 28 edges, above the default cap."""
        with pytest.raises(CensusCapExceededError):
            flow_polynomial(family_graph("complete:8"))

    def test_from_counts_interpolates(self):
        """Interpolating K4's counts at 2..5 recovers its polynomial."""
        p = FlowPolynomial.from_counts({2: 0, 3: 0, 4: 6, 5: 24})
        assert p.coefficients == [-6, 11, -6, 1]


# ============================================================================
# TEST SUITE 4: Oracle Properties
# ============================================================================


class TestCensusProperties:
    """Group-order invariance and polynomial consistency on random multigraphs."""

    @settings(max_examples=200, deadline=None)
    @given(multigraphs(max_vertices=6, max_edges=12))
    def test_group_order_invariance(self, g):
        """Counts depend only on the group order."""
        assert count_nz_flows(g, Z4) == count_nz_flows(g, Z2XZ2)
        assert count_nz_flows(g, Z6) == count_nz_flows(g, Z2XZ3)

    @settings(max_examples=200, deadline=None)
    @given(multigraphs(max_vertices=6, max_edges=12))
    def test_polynomial_matches_counts(self, g):
        """p(k) equals the Zk count for k = 2..6."""
        p = flow_polynomial(g)
        for k in range(2, 7):
            assert p.evaluate(k) == count_nz_flows(g, GroupSpec.cyclic(k))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
