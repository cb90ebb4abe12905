"""
Text formats for graphs and flows.

Graph text: a header line "n m", then m lines "tail head" (0-indexed,
whitespace-separated). Parallel edges repeat a line; a loop is "u u".
Everything after '#' on a line is ignored. Edge ids follow line order.

Flow text: one flow per line, the values in ascending edge id order joined by
',' and each value's residues joined by '|', e.g. "1|2,0|1".
"""

import hashlib
from typing import List, Optional, Sequence, Tuple

from nzflows.domain.flow import Flow
from nzflows.domain.graph import Edge, Multigraph
from nzflows.domain.group import GroupSpec
from nzflows.exceptions import GraphFormatError, InvalidInputError


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content.split()))
    return lines


def _parse_int(token: str, line_number: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"{what} '{token}' is not an integer", line_number) from None
    if value < 0:
        raise GraphFormatError(f"{what} {value} is negative", line_number)
    return value


def parse_graph(text: str) -> Multigraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("missing 'n m' header", 1)
    header_line, header = lines[0]
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'", header_line)
    n = _parse_int(header[0], header_line, "vertex count")
    m = _parse_int(header[1], header_line, "edge count")
    edges: List[Edge] = []
    for number, tokens in lines[1:]:
        if len(tokens) != 2:
            raise GraphFormatError("edge line must be 'tail head'", number)
        tail = _parse_int(tokens[0], number, "vertex")
        head = _parse_int(tokens[1], number, "vertex")
        for v in (tail, head):
            if v >= n:
                raise GraphFormatError(f"vertex {v} out of range for n={n}", number)
        edges.append(Edge(len(edges), tail, head))
    if len(edges) != m:
        last = lines[-1][0]
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}", last)
    return Multigraph(n, tuple(edges))


def serialize_graph(g: Multigraph) -> str:
    """Edges in ascending id order; ids are renumbered 0..m-1 on the way back in."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{e.tail} {e.head}" for e in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Multigraph:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_graph(handle.read())
    except OSError as e:
        raise InvalidInputError(f"cannot read graph file {path}: {e}") from e


def graph_digest(g: Multigraph) -> str:
    """Short sha256 of the serialized graph."""
    return hashlib.sha256(serialize_graph(g).encode("utf-8")).hexdigest()[:16]


def serialize_flow(f: Flow) -> str:
    return ",".join(f.group.format(f.values[eid]) for eid in f.edge_ids)


def serialize_orientation(orientation) -> str:
    """Orientations print as Z3 values: 1 for the reference direction, 2 reversed."""
    return ",".join("1" if orientation[eid] == 1 else "2" for eid in sorted(orientation))


def parse_flow_line(
    line: str, group: GroupSpec, edge_ids: Sequence[int], line_number: Optional[int] = None
) -> Flow:
    """Parse one flow line against the graph's edge ids (ascending)."""
    content = line.strip()
    tokens = content.split(",") if content else []
    if len(tokens) != len(edge_ids):
        raise GraphFormatError(
            f"expected {len(edge_ids)} values, found {len(tokens)}", line_number
        )
    values = {}
    for eid, token in zip(sorted(edge_ids), tokens):
        parts = token.strip().split("|")
        if len(parts) != len(group.moduli):
            raise GraphFormatError(f"value '{token}' does not belong to {group}", line_number)
        try:
            residues = tuple(int(p) for p in parts)
        except ValueError:
            raise GraphFormatError(f"value '{token}' is not numeric", line_number) from None
        if not group.contains(residues):
            raise GraphFormatError(f"value '{token}' is out of range for {group}", line_number)
        values[eid] = residues
    return Flow(group, values)
