"""Exact and approximate optimisation on minor-closed graph classes.

Submodules:
    graph      graph type, traversal, contraction, generators
    minors     minor and odd-minor models, exhaustive search
    treedec    tree decompositions, exact treewidth, nice form
    dp         dynamic programming over nice decompositions
    baker      layer partitions and approximation drivers
    gnc        vertex cover kernels and the guess-and-conquer solver
    bipartite  flow, matching, bipartite cover/independent set, hybrid solver
    oracle     exhaustive reference solvers
"""

from .graph import Graph

__version__ = "0.1.0"

__all__ = ["Graph", "__version__"]
