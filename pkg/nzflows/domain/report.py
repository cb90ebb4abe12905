"""
Verification Run Report

Summary of one `verify` run: what was generated, what the theory guarantees and
which checks held. Serialized as JSON by the CLI.
"""

from typing import Dict, Optional, Union

from pydantic import BaseModel, field_validator

from nzflows.exceptions import InvalidInputError
from nzflows.utils.bounds import BOUND_VARIANTS

CENSUS_SKIPPED = "skipped: over cap"


class RunReport(BaseModel):
    """Outcome of running one generator variant on one graph."""

    input_digest: str
    variant: str
    n: int
    m: int
    bound: int
    bound_expression: str
    emitted: int
    census: Union[int, str] = CENSUS_SKIPPED
    checks: Dict[str, bool] = {}
    wall_time: float = 0.0
    error_message: Optional[str] = None

    @field_validator("variant")
    @classmethod
    def validate_variant(cls, v):
        if v not in BOUND_VARIANTS:
            raise InvalidInputError(f"Unknown variant '{v}'")
        return v

    @field_validator("census")
    @classmethod
    def validate_census(cls, v):
        if isinstance(v, int) and v < 0:
            raise InvalidInputError("census count cannot be negative")
        return v

    @property
    def census_ran(self) -> bool:
        return isinstance(self.census, int)

    @property
    def passed(self) -> bool:
        return self.error_message is None and all(self.checks.values())

    def summary(self) -> Dict[str, object]:
        """JSON-ready view with the pass flag; wall time excluded for reproducible diffs."""
        data = self.model_dump(exclude={"wall_time"})
        data["passed"] = self.passed
        return data


def build_checks(
    emitted: int, bound: int, all_valid: bool, census: Union[int, str]
) -> Dict[str, bool]:
    checks = {
        "meets_bound": emitted >= bound,
        "all_valid": all_valid,
    }
    if isinstance(census, int):
        checks["within_census"] = emitted <= census
    return checks
