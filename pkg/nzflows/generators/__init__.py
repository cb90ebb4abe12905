"""Nowhere-zero flow generators for Z2xZ3, Z2xZ2 and Z3."""

from .trees_z4 import z4_flow_family
from .z3_recursion import z3_flow_family
from .z6_pipeline import z6_flow_family

__all__ = ["z6_flow_family", "z4_flow_family", "z3_flow_family"]
