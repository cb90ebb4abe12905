from typing import Optional


class NzFlowsError(Exception):
    """Base exception class for nzflows errors."""

    pass


class InvalidInputError(NzFlowsError):
    """Raised when invalid input is provided."""

    pass


class GraphFormatError(InvalidInputError):
    """Raised when graph or flow text cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DomainMismatchError(NzFlowsError):
    """Raised when a flow is not defined on exactly the edges of its graph."""

    pass


class PreconditionError(NzFlowsError):
    """Raised when a graph does not satisfy a required property."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class MaderViolationError(NzFlowsError):
    """Raised when no splittable pair verifies at an eligible vertex."""

    pass


class CorollaryViolationError(NzFlowsError):
    """Raised when no lift keeps the graph k-edge-connected."""

    pass


class CoverConstructionError(NzFlowsError):
    """Raised when a chain cover lacks a required directed path or cycle."""

    def __init__(self, message: str, chain_index: Optional[int] = None):
        if chain_index is not None:
            message = f"chain {chain_index}: {message}"
        super().__init__(message)
        self.chain_index = chain_index


class PullbackError(NzFlowsError):
    """Raised when a reduction step cannot transport flows."""

    pass


class CensusCapExceededError(NzFlowsError):
    """Raised when a graph is too large for exact enumeration."""

    pass


class InstanceTooLargeError(NzFlowsError):
    """Raised when a search exceeds its configured budget."""

    pass


class ExtensionOracleError(NzFlowsError):
    """Raised when an orientation extension that must exist is not found."""

    pass


class FamilyError(NzFlowsError):
    """Raised when a graph family cannot be built."""

    pass


class Z3RecursionError(NzFlowsError):
    """Raised when no reduction case applies in the Z3 recursion."""

    pass
