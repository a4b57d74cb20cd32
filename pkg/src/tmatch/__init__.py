"""Exact maximum Delta-temporal matching via window families and dynamic programming."""

from .dp import SolveReport, solve
from .oracle import brute_force, greedy, random_instance
from .temporal import (
    Matching,
    TemporalGraph,
    TimeEdge,
    delta_independent,
    parse_instance,
    validate_matching,
)

__all__ = [
    "Matching",
    "SolveReport",
    "TemporalGraph",
    "TimeEdge",
    "brute_force",
    "delta_independent",
    "greedy",
    "parse_instance",
    "random_instance",
    "solve",
    "validate_matching",
]

__version__ = "0.1.0"
