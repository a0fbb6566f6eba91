"""Disjoint even-cycle packings in 2-connected graphs of given minimum degree."""

__version__ = "0.1.0"

from .errors import DefectError, EvenCycleError, GraphFormatError, Inconclusive, PreconditionError
from .graph import Graph, format_edge_list, parse_edge_list
from .ladders import CyclePacking, Ladder, TargetPartition, WeakLadder, partitions
from .packing import oracle_pack, spectrum, detect_beta_extremal
from .pipeline import Caps, ObstructionReport, PipelineResult, pack_pipeline

__all__ = [
    "Caps", "CyclePacking", "DefectError", "EvenCycleError", "Graph", "GraphFormatError",
    "Inconclusive", "Ladder", "ObstructionReport", "PipelineResult", "PreconditionError",
    "TargetPartition", "WeakLadder", "detect_beta_extremal", "format_edge_list", "oracle_pack",
    "pack_pipeline", "parse_edge_list", "partitions", "spectrum",
]
