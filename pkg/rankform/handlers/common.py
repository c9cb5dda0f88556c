# rankform/handlers/common.py
import argparse
import sys

from loguru import logger

from ..config.config import Config
from ..graph import DirectedGraph, StructureKind, StructureSpec, read_edge_list
from ..helpers.utils import read_bytes
from ..templates.messages import Messages

KIND_CHOICES = [kind.value for kind in StructureKind]


def add_structure_args(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--kind", required=required, help=f"structure: {', '.join(KIND_CHOICES)}")
    parser.add_argument("--nl", type=int, default=0, help="nodes in the line part")
    parser.add_argument("--ng", type=int, default=0, help="nodes in the complete part")
    parser.add_argument("--j", type=int, default=0, help="attachment index on the line")


def add_c_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--c", type=float, default=Config.DEFAULT_C,
                        help=f"damping factor in (0, 1), default {Config.DEFAULT_C}")


def spec_from_args(args) -> StructureSpec:
    return StructureSpec(StructureKind.parse(args.kind), args.nl, args.ng, args.j).check()


def load_graph(path: str) -> DirectedGraph:
    """Read an edge-list file, enforcing the node cap"""
    graph = read_edge_list(read_bytes(path), max_nodes=Config.MAX_NODES)
    logger.info(f"Loaded {path}: {graph.n} nodes, {graph.edge_count} edges")
    return graph


def warn_if_near_singular(c: float) -> None:
    if c >= Config.NEAR_SINGULAR_C:
        logger.warning(f"c={c} is in the near-singular regime")
        print(Messages.NEAR_SINGULAR.format(c=c), file=sys.stderr)
