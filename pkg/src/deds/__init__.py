"""Directed (p,q)-edge dominating set toolkit.

An arc (u,v) dominates itself, all arcs on directed paths of length at most q
leaving v, and all arcs on directed paths of length at most p entering u.
The package bundles exact solvers (subset and branching oracles, FPT
branching, treewidth DP), kernelizations, constant-factor approximations,
the tournament classification, and the reduction-based instance generators,
all cross-validated against each other.
"""

from .domination import Instance, Solution, dominated_arcs, verify
from .graph import Digraph, Tournament, UndirectedGraph, UndirectedView

__all__ = [
    "Digraph",
    "Tournament",
    "UndirectedGraph",
    "UndirectedView",
    "Instance",
    "Solution",
    "dominated_arcs",
    "verify",
]

__version__ = "0.1.0"
