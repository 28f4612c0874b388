"""Exact solver for the forced traveling salesman problem on edge-weighted
multigraphs of maximum degree 3, with measure-based search instrumentation."""

from .graph import Instance, UComponent, GraphError, parse_instance, format_instance
from .search import TourResult, solve, solve_all_4cycles
from .oracles import held_karp, exhaustive_forced
from .analysis import WeightConfig, DEFAULT_CONFIG, MeasureAudit, measure, verify_config
from .generators import GeneratorSpec, generate, inject_forced

__all__ = [
    "Instance",
    "UComponent",
    "GraphError",
    "parse_instance",
    "format_instance",
    "TourResult",
    "solve",
    "solve_all_4cycles",
    "held_karp",
    "exhaustive_forced",
    "WeightConfig",
    "DEFAULT_CONFIG",
    "MeasureAudit",
    "measure",
    "verify_config",
    "GeneratorSpec",
    "generate",
    "inject_forced",
]
