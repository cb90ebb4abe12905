"""Command handlers behind the nzflows CLI"""

from .census_commands import census_command
from .generation_commands import gen_command, verify_command, verify_graph
from .graph_commands import connectivity_command, cover_command, family_command

__all__ = [
    "census_command",
    "connectivity_command",
    "cover_command",
    "family_command",
    "gen_command",
    "verify_command",
    "verify_graph",
]
