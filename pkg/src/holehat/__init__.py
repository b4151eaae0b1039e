"""Exact tools for hole-with-hat-free graphs: detectors, decompositions,
coherence checks, narrowness certificates and an exhaustive lemma harness."""

from .graph import Graph, GraphError, build_graph, complement
from .formats import FormatError, from_edge_list, from_graph6, to_edge_list, to_graph6
from .reports import LEMMA_IDS, LemmaReport

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "build_graph", "complement",
    "FormatError", "from_edge_list", "from_graph6", "to_edge_list", "to_graph6",
    "LEMMA_IDS", "LemmaReport",
]
