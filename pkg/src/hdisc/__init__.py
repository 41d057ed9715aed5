"""Exact computation of minimum-degree thresholds for perfect H-factors of
high discrepancy in 2-edge-colored graphs, with witnesses and an oracle."""

from .errors import Contradiction, ContractViolation, HypothesisFailure
from .graph import ColoredGraph, Graph, parse_colored_edge_list, parse_edge_list
from .templates import delta0, is_template
from .threshold import delta_star

__version__ = "0.1.0"

__all__ = [
    "ColoredGraph", "Contradiction", "ContractViolation", "Graph", "HypothesisFailure",
    "delta0", "delta_star", "is_template", "parse_colored_edge_list", "parse_edge_list",
]
