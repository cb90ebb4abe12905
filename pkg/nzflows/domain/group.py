"""
Finite Abelian Group Descriptors

Groups are products of cyclic groups; elements are residue tuples with one
coordinate per cyclic factor. Only the groups the flow generators need are
named (Zk, Z2xZ2, Z2xZ3), but the arithmetic is generic.
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

from nzflows.exceptions import InvalidInputError

GroupElem = Tuple[int, ...]

_CYCLIC_NAME = re.compile(r"^z(\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    """Finite abelian group Z_{m1} x ... x Z_{mr} with a display kind."""

    kind: str
    moduli: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.moduli or any(m < 2 for m in self.moduli):
            raise InvalidInputError(f"Invalid group moduli: {self.moduli}")

    @classmethod
    def cyclic(cls, k: int) -> "GroupSpec":
        if k < 2:
            raise InvalidInputError(f"Cyclic group order must be at least 2, got {k}")
        return cls(kind=f"Z{k}", moduli=(k,))

    @classmethod
    def z2xz2(cls) -> "GroupSpec":
        return cls(kind="Z2xZ2", moduli=(2, 2))

    @classmethod
    def z2xz3(cls) -> "GroupSpec":
        return cls(kind="Z2xZ3", moduli=(2, 3))

    @classmethod
    def parse(cls, name: str) -> "GroupSpec":
        """Parse a CLI group name such as ``z3``, ``z2xz2`` or ``z2xz3``."""
        key = name.strip().lower()
        if key == "z2xz2":
            return cls.z2xz2()
        if key == "z2xz3":
            return cls.z2xz3()
        match = _CYCLIC_NAME.match(key)
        if match:
            return cls.cyclic(int(match.group(1)))
        raise InvalidInputError(f"Unknown group: {name}")

    @property
    def order(self) -> int:
        result = 1
        for m in self.moduli:
            result *= m
        return result

    @property
    def zero(self) -> GroupElem:
        return tuple(0 for _ in self.moduli)

    @cached_property
    def _elements(self) -> Tuple[GroupElem, ...]:
        return tuple(itertools.product(*(range(m) for m in self.moduli)))

    def elements(self) -> List[GroupElem]:
        """All elements in lexicographic residue order (zero first)."""
        return list(self._elements)

    def nonzero_elements(self) -> List[GroupElem]:
        return list(self._elements[1:])

    def index_of(self, a: GroupElem) -> int:
        index = 0
        for x, m in zip(a, self.moduli):
            index = index * m + x
        return index

    def normalize(self, a) -> GroupElem:
        if isinstance(a, int):
            a = (a,)
        if len(a) != len(self.moduli):
            raise InvalidInputError(f"Element {a} does not belong to {self.kind}")
        return tuple(int(x) % m for x, m in zip(a, self.moduli))

    def contains(self, a: GroupElem) -> bool:
        return len(a) == len(self.moduli) and all(
            0 <= x < m for x, m in zip(a, self.moduli)
        )

    def add(self, a: GroupElem, b: GroupElem) -> GroupElem:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def sub(self, a: GroupElem, b: GroupElem) -> GroupElem:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: GroupElem) -> GroupElem:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, a: GroupElem, factor: int) -> GroupElem:
        return tuple((x * factor) % m for x, m in zip(a, self.moduli))

    def is_zero(self, a: GroupElem) -> bool:
        return all(x == 0 for x in a)

    def format(self, a: GroupElem) -> str:
        """Residues joined by ``|`` (the flow line format)."""
        return "|".join(str(x) for x in a)

    def __str__(self) -> str:
        return self.kind
