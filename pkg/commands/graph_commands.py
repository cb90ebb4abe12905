"""
Graph Inspection Commands

`connectivity`, `cover` and `family`: structural reports on a graph file and
family construction.
"""

import time
from typing import Dict, List, Optional, TextIO

from loguru import logger

from commands.base import CommandInput, CommandOutput, failure
from nzflows.domain.families import FamilySpec, make_family
from nzflows.exceptions import NzFlowsError
from nzflows.generators.cover_z6 import (
    build_anchored_chain_cover,
    certified_cover_count,
    plan_cover,
    validate_cover,
)
from nzflows.graphs.connectivity import bridges, edge_connectivity
from nzflows.graphs.trees import pack_two_spanning_trees
from nzflows.utils.formats import serialize_graph


class ConnectivityInput(CommandInput):
    pass


class ConnectivityOutput(CommandOutput):
    n: int = 0
    m: int = 0
    edge_connectivity: int = 0
    cut_side: List[int] = []
    cut_edges: List[int] = []
    bridges: List[int] = []
    two_spanning_trees: bool = False


def connectivity_command(input_data: ConnectivityInput) -> ConnectivityOutput:
    """Edge connectivity with a minimum cut certificate, bridges and tree packing."""
    start_time = time.time()
    try:
        g = input_data.load_graph()
        lam, cert = edge_connectivity(g)
        pair = pack_two_spanning_trees(g) if g.n > 0 else None
        logger.info(f"edge connectivity {lam} (cut of size {cert.size})")
        return ConnectivityOutput(
            success=True,
            n=g.n,
            m=g.m,
            edge_connectivity=lam,
            cut_side=sorted(cert.side),
            cut_edges=list(cert.crossing_edges),
            bridges=bridges(g),
            two_spanning_trees=pair is not None,
            processing_time=time.time() - start_time,
        )
    except NzFlowsError as e:
        return failure(ConnectivityOutput, e, start_time)


class CoverInput(CommandInput):
    pass


class CoverOutput(CommandOutput):
    chains: List[Dict[str, object]] = []
    anchors: List[List[int]] = []
    external: List[int] = []
    p: int = 0
    even_anchor_subset: List[int] = []
    formula_bound: str = ""
    certified_count: int = 0


def cover_command(input_data: CoverInput) -> CoverOutput:
    """Anchored chain cover of a 3-edge-connected graph and the counts it certifies."""
    start_time = time.time()
    try:
        g = input_data.load_graph()
        cover = build_anchored_chain_cover(g)
        if not validate_cover(g, cover):
            raise NzFlowsError("constructed chain cover failed validation")
        plan = plan_cover(g, cover)
        chains = [
            {
                "kind": chain.kind,
                "vertices": list(chain.vertices),
                "edges": list(chain.edge_ids),
                "u": chain.u,
                "v": chain.v,
            }
            for chain in cover.chains
        ]
        logger.info(f"chain cover with {cover.k} chains, p={cover.p}")
        return CoverOutput(
            success=True,
            chains=chains,
            anchors=[list(pair) for pair in cover.anchors],
            external=sorted(cover.external),
            p=cover.p,
            even_anchor_subset=sorted(cover.even_anchor_subset),
            formula_bound=cover.formula_bound().describe(),
            certified_count=certified_cover_count(plan),
            processing_time=time.time() - start_time,
        )
    except NzFlowsError as e:
        return failure(CoverOutput, e, start_time)


class FamilyInput(CommandInput):
    graph_path: str = ""
    spec: str
    seed: int = 0


class FamilyOutput(CommandOutput):
    label: str = ""
    n: int = 0
    m: int = 0
    edge_connectivity: int = 0
    attempts: int = 0


def family_command(input_data: FamilyInput, stream: TextIO) -> FamilyOutput:
    """Build a family graph and write it in the graph text format."""
    start_time = time.time()
    try:
        build = make_family(FamilySpec.parse(input_data.spec, input_data.seed))
        g = build.graph
        stream.write(
            f"# {build.spec.label()} seed={build.spec.seed} attempts={build.attempts}\n"
        )
        stream.write(serialize_graph(g))
        return FamilyOutput(
            success=True,
            label=build.spec.label(),
            n=g.n,
            m=g.m,
            edge_connectivity=build.connectivity,
            attempts=build.attempts,
            processing_time=time.time() - start_time,
        )
    except NzFlowsError as e:
        return failure(FamilyOutput, e, start_time)
