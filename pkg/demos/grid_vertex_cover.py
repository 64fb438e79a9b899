"""Deciding vertex cover on grids: kernels, regimes and the width of what is left.

Run: python3 demos/grid_vertex_cover.py
"""

import math

from minorfree import gnc
from minorfree.graph import grid
from minorfree.treedec import heuristic_decompose


def main():
    for r, c in [(4, 4), (6, 6), (8, 8), (10, 10)]:
        g = grid(r, c)
        opt = (r * c) // 2  # grids are bipartite with a near-perfect matching
        print(f"grid {r}x{c}: n={g.n}, optimum {opt}")
        for k in (opt - 1, opt):
            for beta in (0.0, 8.0):
                dec, cert, rep = gnc.gnc_solve_vc(g, k, beta=beta)
                print(f"  k={k:3d} beta={beta:3.0f}  {'yes' if dec else 'no ':3s}  regime={rep.regime:14s} "
                      f"method={rep.method:12s} kernel={rep.kernel_vertices}")
        kr = gnc.kernel_vc_nt(g, opt)
        if kr.graph.n:
            w = heuristic_decompose(kr.graph).width
            print(f"  NT kernel at k={opt}: {kr.graph.n} vertices, width {w}, "
                  f"width/sqrt(n) = {w / math.sqrt(kr.graph.n):.2f}")


if __name__ == "__main__":
    main()
