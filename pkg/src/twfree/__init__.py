"""Recognition, decomposition and generation of (theta, wheel)-free graphs."""

from .graph import Graph, GraphError, GraphParseError, parse_graph, format_graph

__all__ = ["Graph", "GraphError", "GraphParseError", "parse_graph", "format_graph"]
__version__ = "0.1.0"
