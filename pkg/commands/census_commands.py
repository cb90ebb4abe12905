"""
Census Commands

`census count|poly|enum`: the exact oracle on a graph file.
"""

import time
from typing import List, Literal, Optional, TextIO

from loguru import logger
from pydantic import field_validator

from commands.base import CommandInput, CommandOutput, failure, write_lines
from nzflows.census.counting import count_nz_flows, enumerate_nz_flows
from nzflows.census.polynomial import flow_polynomial
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import InvalidInputError, NzFlowsError
from nzflows.utils.formats import serialize_flow

CENSUS_GROUPS = ("z2", "z3", "z4", "z6", "z2xz2", "z2xz3")


class CensusInput(CommandInput):
    mode: Literal["count", "poly", "enum"]
    group: str = "z2xz3"
    limit: Optional[int] = None

    @field_validator("group")
    @classmethod
    def validate_group(cls, v):
        key = v.strip().lower()
        if key not in CENSUS_GROUPS:
            raise InvalidInputError(
                f"Unsupported group '{v}'; expected one of {', '.join(CENSUS_GROUPS)}"
            )
        return key


class CensusOutput(CommandOutput):
    mode: str = ""
    group: str = ""
    count: Optional[int] = None
    coefficients: List[int] = []
    emitted: int = 0


def census_command(input_data: CensusInput, stream: TextIO) -> CensusOutput:
    """
    Run one census mode.

    count prints the exact number of nowhere-zero flows, poly the flow
    polynomial coefficients (ascending powers), enum one flow per line.
    """
    start_time = time.time()
    mode = input_data.mode
    try:
        g = input_data.load_graph()
        group = GroupSpec.parse(input_data.group)
        if mode == "count":
            count = count_nz_flows(g, group, threads=input_data.threads)
            stream.write(f"{count}\n")
            return CensusOutput(
                success=True,
                mode=mode,
                group=group.kind,
                count=count,
                processing_time=time.time() - start_time,
            )
        if mode == "poly":
            polynomial = flow_polynomial(g)
            stream.write(" ".join(str(c) for c in polynomial.coefficients) + "\n")
            return CensusOutput(
                success=True,
                mode=mode,
                group=group.kind,
                coefficients=polynomial.coefficients,
                count=polynomial.evaluate(group.order),
                processing_time=time.time() - start_time,
            )
        emitted = write_lines(
            stream,
            (serialize_flow(f) for f in enumerate_nz_flows(g, group, limit=input_data.limit)),
        )
        logger.info(f"enumerated {emitted} nowhere-zero {group} flows")
        return CensusOutput(
            success=True,
            mode=mode,
            group=group.kind,
            emitted=emitted,
            processing_time=time.time() - start_time,
        )
    except NzFlowsError as e:
        return failure(CensusOutput, e, start_time, mode=mode)
