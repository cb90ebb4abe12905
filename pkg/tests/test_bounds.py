"""
Unit tests for nzflows.utils.bounds: exact ceilings of rational powers.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nzflows.exceptions import InvalidInputError
from nzflows.utils.bounds import (
    ExactBound,
    bound_expression,
    ceil_pow2,
    guaranteed_bound,
    integer_root,
)

# ============================================================================
# TEST SUITE 1: Integer Arithmetic
# ============================================================================


class TestIntegerRoot:
    """Test suite for integer d-th roots."""

    @pytest.mark.parametrize(
        "value,degree,expected",
        [(0, 3, 0), (1, 5, 1), (8, 3, 2), (9, 3, 2), (10**12, 4, 1000), (3**70, 7, 3**10)],
    )
    def test_values(self, value, degree, expected):
        """Largest r with r^d <= value."""
        assert integer_root(value, degree) == expected

    def test_rejects_negative(self):
        """Negative values have no integer root here."""
        with pytest.raises(InvalidInputError):
            integer_root(-1, 2)

    @given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=1, max_value=12))
    def test_root_brackets_value(self, value, degree):
        """r^d <= value < (r + 1)^d."""
        r = integer_root(value, degree)
        assert r**degree <= value < (r + 1) ** degree


# ============================================================================
# TEST SUITE 2: Exact Bounds
# ============================================================================


class TestExactBound:
    """Test suite for ceilings and comparisons."""

    @pytest.mark.parametrize(
        "base,exponent,expected",
        [
            (2, Fraction(10, 7), 3),
            (2, Fraction(4, 7), 2),
            (2, Fraction(1, 12), 2),
            (2, Fraction(5, 12), 2),
            (3, 2, 9),
            (2, 0, 1),
            (2, Fraction(-1, 2), 1),
            (2, Fraction(20, 7), 8),
        ],
    )
    def test_ceiling(self, base, exponent, expected):
        """Ceilings of rational powers, decided in integers."""
        assert ExactBound.power(base, exponent).ceiling() == expected

    def test_is_met_by_on_exact_powers(self):
        """An integer power is met by its own value and not by one less."""
        bound = ExactBound.power(3, 4)
        assert bound.is_met_by(81)
        assert not bound.is_met_by(80)

    def test_product(self):
        """2^3 * 3^(1/2) is about 13.86."""
        bound = ExactBound.power(2, 3).times(ExactBound.power(3, Fraction(1, 2)))
        assert bound.ceiling() == 14
        assert bound.describe() == "2^(3) * 3^(1/2)"

    @given(st.integers(min_value=0, max_value=60), st.integers(min_value=1, max_value=12))
    def test_ceiling_is_tight(self, numerator, denominator):
        """The ceiling meets the bound and the integer below it does not."""
        bound = ExactBound.power(2, Fraction(numerator, denominator))
        c = bound.ceiling()
        assert bound.is_met_by(c)
        assert c == 1 or not bound.is_met_by(c - 1)


# ============================================================================
# TEST SUITE 3: Variant Bounds
# ============================================================================


class TestVariantBounds:
    """Test suite for the per-variant bound expressions."""

    @pytest.mark.parametrize(
        "n,variant,m,expected",
        [
            (10, "z6", None, 3),
            (10, "z6_cubic", None, 4),
            (5, "z6_sparse", 10, 3),
            (4, "z6_dense", 8, 4),
            (4, "z4", None, 2),
            (24, "z4_pairs", None, 4),
            (5, "z4_dense", 10, 9),
            (3, "z3", None, 2),
            (7, "z3", None, 2),
        ],
    )
    def test_guaranteed_bound(self, n, variant, m, expected):
        """Ceilings of the variant formulas on small inputs."""
        assert guaranteed_bound(n, variant, m) == expected

    def test_edge_count_required(self):
        """Edge-count variants need m."""
        with pytest.raises(InvalidInputError):
            bound_expression(5, "z4_dense")

    def test_unknown_variant(self):
        """Only listed variants have a bound."""
        with pytest.raises(InvalidInputError):
            bound_expression(5, "z5")

    def test_z3_needs_two_vertices(self):
        """(n - 2) / 12 is only meaningful for n >= 2."""
        with pytest.raises(InvalidInputError):
            bound_expression(1, "z3")

    def test_ceil_pow2(self):
        """ceil(2^(n/7)) for the Petersen graph."""
        assert ceil_pow2(10, 7) == 3


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
