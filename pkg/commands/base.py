"""
Command Input/Output Models

Every CLI command takes a pydantic input model and returns an output model;
`cli.py` turns outputs into stdout text and exit codes.
"""

import time
from typing import Optional, TextIO

from loguru import logger
from pydantic import BaseModel, field_validator

from nzflows.domain.graph import Multigraph
from nzflows.exceptions import (
    CensusCapExceededError,
    DomainMismatchError,
    FamilyError,
    InstanceTooLargeError,
    InvalidInputError,
    NzFlowsError,
    PreconditionError,
)
from nzflows.utils.formats import read_graph

EXIT_OK = 0
EXIT_INVARIANT_FAILURE = 1
EXIT_INPUT_ERROR = 2

# errors caused by what the user asked for rather than by a broken invariant
INPUT_ERRORS = (
    InvalidInputError,
    PreconditionError,
    FamilyError,
    CensusCapExceededError,
    InstanceTooLargeError,
    DomainMismatchError,
)


class CommandInput(BaseModel):
    """Fields shared by commands that read a graph file."""

    graph_path: str
    threads: int = 1

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v):
        if v < 1:
            raise InvalidInputError("--threads must be at least 1")
        return v

    def load_graph(self) -> Multigraph:
        g = read_graph(self.graph_path)
        logger.debug(f"loaded {self.graph_path}: n={g.n}, m={g.m}")
        return g


class CommandOutput(BaseModel):
    success: bool
    exit_code: int = EXIT_OK
    processing_time: float = 0.0
    error_message: Optional[str] = None


def exit_code_for(error: NzFlowsError) -> int:
    return EXIT_INPUT_ERROR if isinstance(error, INPUT_ERRORS) else EXIT_INVARIANT_FAILURE


def failure(output_cls, error: NzFlowsError, start_time: float, **fields):
    """Build the failed output of ``output_cls`` for ``error``."""
    logger.error(f"{type(error).__name__}: {error}")
    return output_cls(
        success=False,
        exit_code=exit_code_for(error),
        processing_time=time.time() - start_time,
        error_message=str(error),
        **fields,
    )


def write_lines(stream: TextIO, lines) -> int:
    count = 0
    for line in lines:
        stream.write(line)
        stream.write("\n")
        count += 1
    return count
