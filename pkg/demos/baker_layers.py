"""Layer shifting on a random subgrid: each shift's width and the value found.

Run: python3 demos/baker_layers.py
"""

from minorfree import baker, oracle
from minorfree.graph import random_subgrid


def main():
    g = random_subgrid(4, 4, 0.8, 2024)
    opt = oracle.max_independent_set(g)[0]
    print(f"subgrid: n={g.n} m={g.m}, optimum independent set {opt}")
    for t in (2, 3, 4, 5):
        part = baker.baker_partition(g, t)
        sizes = [len(c) for c in part.classes]
        sol, rep = baker.ptas_is(g, None, t)
        print(f"t={t}: class sizes {sizes}, widths after deletion {list(rep.widths)}, "
              f"best shift {rep.shift} -> {sol.value} (guarantee {rep.guarantee} of optimum)")
    sol, rep = baker.ptas_domset(g, 3)
    print(f"dominating set with t=3: {sol.value} vertices (optimum {oracle.min_dominating_set(g)[0]})")
    colors, rep = baker.two_part_color(g, baker.decompose_two_parts(g))
    print(f"two-part colouring uses {rep.value} colours (chromatic number {oracle.chromatic_number(g)[0]})")


if __name__ == "__main__":
    main()
