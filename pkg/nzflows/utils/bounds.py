"""
Exact lower-bound arithmetic.

Bounds have the form prod(base ** exponent) with rational exponents. Ceilings
and comparisons are done in integers (d-th roots by bisection), never with
floating point.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from nzflows.exceptions import InvalidInputError


def integer_root(value: int, degree: int) -> int:
    """Largest r with r ** degree <= value."""
    if value < 0 or degree < 1:
        raise InvalidInputError("integer_root needs value >= 0 and degree >= 1")
    if value < 2:
        return value
    low, high = 1, 1 << (value.bit_length() // degree + 1)
    while low < high:
        mid = (low + high + 1) // 2
        if mid**degree <= value:
            low = mid
        else:
            high = mid - 1
    return low


@dataclass(frozen=True)
class ExactBound:
    """prod(base ** exponent) for (base, exponent) factors."""

    factors: Tuple[Tuple[int, Fraction], ...]

    @classmethod
    def power(cls, base: int, exponent) -> "ExactBound":
        return cls(((base, Fraction(exponent)),))

    def times(self, other: "ExactBound") -> "ExactBound":
        return ExactBound(self.factors + other.factors)

    def _as_root(self) -> Tuple[int, int, int]:
        """(numerator, denominator, d) with the bound equal to (num / den) ** (1 / d)."""
        d = 1
        for _, exponent in self.factors:
            d = d * exponent.denominator // math.gcd(d, exponent.denominator)
        numerator, denominator = 1, 1
        for base, exponent in self.factors:
            power = exponent * d
            assert power.denominator == 1
            p = int(power)
            if p >= 0:
                numerator *= base**p
            else:
                denominator *= base ** (-p)
        return numerator, denominator, d

    def is_met_by(self, count: int) -> bool:
        """count >= bound, decided exactly."""
        if count < 0:
            return False
        numerator, denominator, d = self._as_root()
        return count**d * denominator >= numerator

    def ceiling(self) -> int:
        """Smallest integer c with c >= bound."""
        numerator, denominator, d = self._as_root()
        c = integer_root(numerator // denominator, d)
        while not (c**d * denominator >= numerator):
            c += 1
        while c > 0 and (c - 1) ** d * denominator >= numerator:
            c -= 1
        return c

    def describe(self) -> str:
        return " * ".join(f"{base}^({exponent})" for base, exponent in self.factors) or "1"


BOUND_VARIANTS = (
    "z6",
    "z6_sparse",
    "z6_dense",
    "z6_cubic",
    "z4",
    "z4_pairs",
    "z4_dense",
    "z3",
)


def bound_expression(n: int, variant: str, m: Optional[int] = None) -> ExactBound:
    """Exact bound for a generator variant; ``m`` is needed for edge-count variants."""
    if variant in ("z6_sparse", "z6_dense", "z4_dense") and m is None:
        raise InvalidInputError(f"variant {variant} needs the edge count m")
    if variant == "z6":
        return ExactBound.power(2, Fraction(n, 7))
    if variant == "z6_sparse":
        return ExactBound.power(2, Fraction(2 * (m - n), 9))
    if variant == "z6_dense":
        return ExactBound.power(2, Fraction(2 * m - 3 * n, 2))
    if variant == "z6_cubic":
        return ExactBound.power(2, Fraction(n, 5))
    if variant == "z4":
        return ExactBound.power(2, Fraction(n, 250))
    if variant == "z4_pairs":
        return ExactBound.power(2, Fraction(n, 12))
    if variant == "z4_dense":
        return ExactBound.power(3, m - 2 * n + 2)
    if variant == "z3":
        if n < 2:
            raise InvalidInputError("the z3 bound needs n >= 2")
        return ExactBound.power(2, Fraction(n - 2, 12))
    raise InvalidInputError(f"Unknown bound variant: {variant}")


def guaranteed_bound(n: int, variant: str, m: Optional[int] = None) -> int:
    """Ceiling of the variant's lower bound, computed exactly."""
    return bound_expression(n, variant, m).ceiling()


def ceil_pow2(numerator: int, denominator: int) -> int:
    """ceil(2 ** (numerator / denominator))."""
    return ExactBound.power(2, Fraction(numerator, denominator)).ceiling()
