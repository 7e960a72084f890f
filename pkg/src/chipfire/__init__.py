"""Instability minimum of chip-firing games on strongly connected directed multigraphs."""

from .errors import ChipfireError
from .exact import InstabilityResult, feedback_number, instability_by_strategies, solve
from .extension import instability_by_extension
from .game import classify, instability_oracle
from .heuristics import run_heuristic
from .multigraph import DirectedMultigraph, build, random_strongly_connected
from .period import PeriodData, primitive_period_vector

__all__ = [
    "ChipfireError",
    "DirectedMultigraph",
    "InstabilityResult",
    "PeriodData",
    "build",
    "classify",
    "feedback_number",
    "instability_by_extension",
    "instability_by_strategies",
    "instability_oracle",
    "primitive_period_vector",
    "random_strongly_connected",
    "run_heuristic",
    "solve",
]
