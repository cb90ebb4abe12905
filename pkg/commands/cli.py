"""
nzflows command line

    nzflows connectivity <file>
    nzflows cover <file>
    nzflows gen {z6|z4|z3} <file> [--limit N] [--out path]
    nzflows census {count|poly|enum} <file> --group G [--limit N] [--out path]
    nzflows verify {z6|z4|z3} <file> [--limit N]
    nzflows family <spec> [--seed S] [--out path]

Exit codes: 0 pass, 1 invariant failure, 2 usage or parse error.
"""

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Iterator, List, Optional, TextIO

from loguru import logger
from pydantic import ValidationError

from commands.base import EXIT_INPUT_ERROR, CommandOutput
from commands.census_commands import CENSUS_GROUPS, CensusInput, census_command
from commands.generation_commands import GenInput, VerifyInput, gen_command, verify_command
from commands.graph_commands import (
    ConnectivityInput,
    CoverInput,
    FamilyInput,
    connectivity_command,
    cover_command,
    family_command,
)
from nzflows.config import DEFAULT_FLOW_LIMIT
from nzflows.exceptions import InvalidInputError

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nzflows", description="Nowhere-zero flow generators and exact census."
    )
    parser.add_argument("--threads", type=int, default=1, help="census worker processes")
    parser.add_argument(
        "--log-level", default="WARNING", choices=LOG_LEVELS, help="stderr log level"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("connectivity", help="edge connectivity and minimum cut")
    p.add_argument("file")

    p = sub.add_parser("cover", help="anchored chain cover of a 3-edge-connected graph")
    p.add_argument("file")

    p = sub.add_parser("gen", help="stream nowhere-zero flows")
    p.add_argument("variant", choices=("z6", "z4", "z3"))
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=DEFAULT_FLOW_LIMIT)
    p.add_argument("--out")

    p = sub.add_parser("census", help="exact counting oracle")
    p.add_argument("mode", choices=("count", "poly", "enum"))
    p.add_argument("file")
    p.add_argument("--group", default="z2xz3", choices=CENSUS_GROUPS)
    p.add_argument("--limit", type=int)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a generator against census and bound")
    p.add_argument("variant", choices=("z6", "z4", "z3"))
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=DEFAULT_FLOW_LIMIT)

    p = sub.add_parser("family", help="write a benchmark family graph")
    p.add_argument("spec", help="name or name:p1,p2 (e.g. doubled_cycle:5)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    return parser


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level)
    logger.enable("nzflows")


@contextmanager
def _output_stream(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    try:
        handle = open(path, "w", encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"cannot write {path}: {e}") from e
    with handle:
        yield handle


def _print_json(output: CommandOutput, exclude=frozenset()) -> None:
    data = output.model_dump(exclude={"processing_time", *exclude})
    print(json.dumps(data, indent=2, sort_keys=True))


def run(args: argparse.Namespace) -> int:
    if args.command == "connectivity":
        output = connectivity_command(
            ConnectivityInput(graph_path=args.file, threads=args.threads)
        )
        _print_json(output)
    elif args.command == "cover":
        output = cover_command(CoverInput(graph_path=args.file, threads=args.threads))
        _print_json(output)
    elif args.command == "gen":
        with _output_stream(args.out) as stream:
            output = gen_command(
                GenInput(
                    graph_path=args.file,
                    threads=args.threads,
                    variant=args.variant,
                    limit=args.limit,
                ),
                stream,
            )
    elif args.command == "census":
        with _output_stream(args.out) as stream:
            output = census_command(
                CensusInput(
                    graph_path=args.file,
                    threads=args.threads,
                    mode=args.mode,
                    group=args.group,
                    limit=args.limit,
                ),
                stream,
            )
    elif args.command == "verify":
        output = verify_command(
            VerifyInput(
                graph_path=args.file,
                threads=args.threads,
                variant=args.variant,
                limit=args.limit,
            )
        )
        if output.report is not None:
            print(json.dumps(output.report.summary(), indent=2, sort_keys=True))
        else:
            _print_json(output, exclude={"report"})
    else:
        with _output_stream(args.out) as stream:
            output = family_command(
                FamilyInput(spec=args.spec, seed=args.seed, threads=args.threads), stream
            )
    return output.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return run(args)
    except (InvalidInputError, ValidationError) as e:
        logger.error(f"invalid arguments: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
