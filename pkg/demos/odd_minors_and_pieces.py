"""Odd K3 minors track bipartiteness; a glued graph is solved piece by piece.

Run: python3 demos/odd_minors_and_pieces.py
"""

import random

from minorfree import oracle
from minorfree.corpus import composite
from minorfree.graph import complete, cycle, grid, is_bipartite, petersen, random_bipartite
from minorfree.bipartite import hybrid_solve
from minorfree.minors import find_minor_model, find_odd_minor_model

K3 = complete(3)


def main():
    for name, g in [("C4", cycle(4)), ("C5", cycle(5)), ("3x3 grid", grid(3, 3)), ("Petersen", petersen())]:
        minor = find_minor_model(g, K3) is not None
        odd = find_odd_minor_model(g, K3)
        print(f"{name:9s} bipartite={is_bipartite(g)!s:5s} K3 minor={minor!s:5s} odd K3 minor={odd is not None}")
        if odd:
            model, col = odd
            print(f"          branch sets {model.branch_sets}, colouring {col}")

    rng = random.Random(7)
    entry = composite(random_bipartite(5, 5, 0.5, 11), complete(4), 2, rng, "demo")
    g, pd = entry.graph, entry.pieces
    print(f"\ncomposite: n={g.n}, pieces {[(sorted(vs), kind) for vs, kind in pd.pieces]}, "
          f"boundary {sorted(pd.boundary)}")
    for problem, ref in (("vc", oracle.min_vertex_cover), ("is", oracle.max_independent_set)):
        sol = hybrid_solve(g, pd, problem)
        print(f"  {problem}: {sol.value} (exhaustive {ref(g)[0]}), boundary assignment {sol.stats['assignment']}")


if __name__ == "__main__":
    main()
