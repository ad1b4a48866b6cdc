"""Acyclic edge coloring via focused resampling of bichromatic cycles."""
from .coloring import (CycleFlaw, EdgeColoring, Violation, bichromatic_cycles, find_flaws,
                       four_available, in_omega, initial_coloring, reconstruct_previous,
                       resample_cycle, resample_outcomes, verify_acyclic_coloring)
from .graph import (Graph, cycles_through_edge, degeneracy_order, format_graph, load_graph,
                    max_cycles_through_edge, orientation, parse_graph)
from .params import AecParams, condition_margin, palette_size, params_for
from .solver import AecProblem, AecResult, aec_color

__all__ = [
    "AecParams", "AecProblem", "AecResult", "CycleFlaw", "EdgeColoring", "Graph", "Violation",
    "aec_color", "bichromatic_cycles", "condition_margin", "cycles_through_edge",
    "degeneracy_order", "find_flaws", "format_graph", "four_available", "in_omega",
    "initial_coloring", "load_graph", "max_cycles_through_edge", "orientation",
    "palette_size", "params_for", "parse_graph", "reconstruct_previous", "resample_cycle",
    "resample_outcomes", "verify_acyclic_coloring",
]
