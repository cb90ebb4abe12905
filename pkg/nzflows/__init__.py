"""Nowhere-zero group flows on multigraphs."""

from loguru import logger

# silent as a library; the command line enables it
logger.disable("nzflows")
