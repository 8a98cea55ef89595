"""Exact computations on greedoids: classes, paths and shadows, greedy
optimality conditions, shadow polyhedra with dual certificates, and the
attacker-defender base game."""

from .core import (
    Edge,
    Greedoid,
    GroundSet,
    MixedGraph,
    branching,
    construct,
    direct_sum,
    explicit,
    graphic_matroid,
    minor,
    rooted_extension,
    uniform_matroid,
)
from .errors import GreedoidError
from .greedy import Objective, brute_force_optimum
from .instances import load_fixture, parse_instance

__all__ = [
    "Edge", "Greedoid", "GroundSet", "MixedGraph", "Objective", "GreedoidError",
    "branching", "brute_force_optimum", "construct", "direct_sum", "explicit",
    "graphic_matroid", "load_fixture", "minor", "parse_instance",
    "rooted_extension", "uniform_matroid",
]
