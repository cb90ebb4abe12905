"""
Generation Commands

`gen {z6|z4|z3}` streams flows in the flow line format; `verify` runs the same
generator and checks it against validation, the census and the exact bound.
"""

import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Literal, Optional, TextIO

from loguru import logger

from commands.base import (
    EXIT_INVARIANT_FAILURE,
    EXIT_OK,
    CommandInput,
    CommandOutput,
    failure,
    write_lines,
)
from nzflows.census.counting import check_census_cap, count_nz_flows, enumerate_nz_flows
from nzflows.config import DEFAULT_FLOW_LIMIT, VERIFY_CENSUS_LIMIT
from nzflows.domain.flow import (
    Flow,
    flow_to_orientation,
    is_nowhere_zero,
    orientation_to_flow,
    validate_flow,
)
from nzflows.domain.graph import Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.domain.report import CENSUS_SKIPPED, RunReport, build_checks
from nzflows.exceptions import CensusCapExceededError, NzFlowsError
from nzflows.generators.boundary_z3 import Boundary, verify_beta_flow
from nzflows.generators.trees_z4 import z4_flow_family
from nzflows.generators.z3_recursion import z3_flow_family
from nzflows.generators.z6_pipeline import z6_bound, z6_flow_family
from nzflows.utils.bounds import ExactBound, bound_expression
from nzflows.utils.formats import graph_digest, serialize_flow

Variant = Literal["z6", "z4", "z3"]


@dataclass(frozen=True)
class VariantRunner:
    """How to generate, check and bound one variant."""

    group: GroupSpec
    generate: Callable[[Multigraph, Optional[int]], Iterator[Flow]]
    is_valid: Callable[[Multigraph, Flow], bool]
    bound: Callable[[Multigraph], ExactBound]


def _z3_flows(g: Multigraph, limit: Optional[int]) -> Iterator[Flow]:
    return (orientation_to_flow(o) for o in z3_flow_family(g, limit))


def _z3_valid(g: Multigraph, f: Flow) -> bool:
    return verify_beta_flow(g, flow_to_orientation(f), Boundary.zero(g.n))


def _nz_valid(g: Multigraph, f: Flow) -> bool:
    return is_nowhere_zero(f) and validate_flow(g, f)


def _z4_bound(g: Multigraph) -> ExactBound:
    generic = bound_expression(g.n, "z4")
    if g.m - 2 * g.n + 2 < 0:
        return generic
    dense = bound_expression(g.n, "z4_dense", g.m)
    return dense if dense.ceiling() >= generic.ceiling() else generic


VARIANTS: Dict[str, VariantRunner] = {
    "z6": VariantRunner(GroupSpec.z2xz3(), z6_flow_family, _nz_valid, z6_bound),
    "z4": VariantRunner(GroupSpec.z2xz2(), z4_flow_family, _nz_valid, _z4_bound),
    "z3": VariantRunner(
        GroupSpec.cyclic(3), _z3_flows, _z3_valid, lambda g: bound_expression(g.n, "z3")
    ),
}


class GenInput(CommandInput):
    variant: Variant
    limit: Optional[int] = DEFAULT_FLOW_LIMIT


class GenOutput(CommandOutput):
    variant: str = ""
    emitted: int = 0


def gen_command(input_data: GenInput, stream: TextIO) -> GenOutput:
    """Write the variant's flows, one per line, in generation order."""
    start_time = time.time()
    try:
        g = input_data.load_graph()
        runner = VARIANTS[input_data.variant]
        emitted = write_lines(
            stream, (serialize_flow(f) for f in runner.generate(g, input_data.limit))
        )
        logger.info(f"gen {input_data.variant}: {emitted} flows")
        return GenOutput(
            success=True,
            variant=input_data.variant,
            emitted=emitted,
            processing_time=time.time() - start_time,
        )
    except NzFlowsError as e:
        return failure(GenOutput, e, start_time, variant=input_data.variant)


class VerifyInput(CommandInput):
    variant: Variant
    limit: Optional[int] = DEFAULT_FLOW_LIMIT
    census_limit: int = VERIFY_CENSUS_LIMIT


class VerifyOutput(CommandOutput):
    report: Optional[RunReport] = None


def verify_graph(
    g: Multigraph,
    variant: str,
    limit: Optional[int] = DEFAULT_FLOW_LIMIT,
    threads: int = 1,
    census_limit: int = VERIFY_CENSUS_LIMIT,
) -> RunReport:
    """Generate, validate, count distinct flows and compare with census and bound."""
    start_time = time.time()
    runner = VARIANTS[variant]
    keys = set()
    all_valid = True
    for f in runner.generate(g, limit):
        if not runner.is_valid(g, f):
            logger.warning(f"{variant} produced an invalid flow: {serialize_flow(f)}")
            all_valid = False
        keys.add(f.key())
    bound = runner.bound(g)

    census: object = CENSUS_SKIPPED
    try:
        check_census_cap(g, runner.group)
        census = count_nz_flows(g, runner.group, threads=threads)
    except CensusCapExceededError as e:
        logger.info(f"census skipped: {e}")
    checks = build_checks(len(keys), bound.ceiling(), all_valid, census)
    if isinstance(census, int) and census <= census_limit:
        enumerated = {f.key() for f in enumerate_nz_flows(g, runner.group)}
        checks["in_census"] = keys <= enumerated

    report = RunReport(
        input_digest=graph_digest(g),
        variant=variant,
        n=g.n,
        m=g.m,
        bound=bound.ceiling(),
        bound_expression=bound.describe(),
        emitted=len(keys),
        census=census,
        checks=checks,
        wall_time=time.time() - start_time,
    )
    if not report.passed:
        failed = [name for name, ok in checks.items() if not ok]
        logger.warning(f"verify {variant} failed checks: {', '.join(failed)}")
    return report


def verify_command(input_data: VerifyInput) -> VerifyOutput:
    start_time = time.time()
    try:
        g = input_data.load_graph()
        report = verify_graph(
            g,
            input_data.variant,
            limit=input_data.limit,
            threads=input_data.threads,
            census_limit=input_data.census_limit,
        )
        return VerifyOutput(
            success=report.passed,
            exit_code=EXIT_OK if report.passed else EXIT_INVARIANT_FAILURE,
            report=report,
            processing_time=time.time() - start_time,
        )
    except NzFlowsError as e:
        return failure(VerifyOutput, e, start_time)
