"""Deterministic worst-case to expander-case reductions."""

from .conductance import exact_conductance, exact_edge_expansion, spectral_conductance_lower_bound
from .dynamic import DynamicExpanderState, dyn_delete, dyn_init, dyn_insert, replay
from .expander import BipartiteExpander, build_bipartite_expander
from .gadget import ExpanderizedGraph, GadgetParams, build_core_gadget
from .graph import Graph, parse_edge_list, read_edge_list, write_edge_list
from .wters import SolutionMap

__version__ = "0.1.0"

__all__ = [
    "BipartiteExpander", "DynamicExpanderState", "ExpanderizedGraph", "GadgetParams", "Graph",
    "SolutionMap", "build_bipartite_expander", "build_core_gadget", "dyn_delete", "dyn_init",
    "dyn_insert", "exact_conductance", "exact_edge_expansion", "parse_edge_list",
    "read_edge_list", "replay", "spectral_conductance_lower_bound", "write_edge_list",
]
