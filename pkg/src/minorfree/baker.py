"""Layer partitions and the approximation schemes built on them.

Vertices are split into t classes by BFS level modulo t. Deleting one
class leaves strips of at most t - 1 consecutive levels, which have
bounded treewidth on planar inputs. Each driver tries every class (shift),
solves the rest exactly with the tree-decomposition DP, and keeps the best.
Ties between shifts go to the lowest shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import dp
from .graph import Graph, LevelMap, bfs_layers, edge_weights, induced_subgraph, vertex_weights
from .treedec import WidthCapExceeded, heuristic_decompose, make_nice

# slope of the local treewidth bound on the grid corpus; only used to size
# default width caps
LOCAL_TREEWIDTH_SLOPE = 3


def default_width_cap(t: int) -> int:
    return LOCAL_TREEWIDTH_SLOPE * (t + 2)


@dataclass(frozen=True)
class BakerPartition:
    t: int
    levels: LevelMap
    classes: tuple[frozenset, ...]

    def class_of(self, v: int) -> int:
        return self.levels.level[v] % self.t


@dataclass(frozen=True)
class ApproxReport:
    value: int
    shift: int
    widths: tuple[int, ...]
    guarantee: Fraction

    def to_json(self) -> dict:
        return {"value": self.value, "shift": self.shift, "widths": list(self.widths),
                "guarantee": str(self.guarantee)}


def baker_partition(g: Graph, t: int, roots=None) -> BakerPartition:
    if t < 1:
        raise ValueError("t must be at least 1")
    lv = bfs_layers(g, roots)
    classes = [set() for _ in range(t)]
    for v in range(g.n):
        classes[lv.level[v] % t].add(v)
    return BakerPartition(t, lv, tuple(frozenset(c) for c in classes))


def _solve_rest(g, keep, cap, where):
    sub, old = induced_subgraph(g, keep)
    td = heuristic_decompose(sub)
    if td.width > cap:
        raise WidthCapExceeded(td.width, cap, where)
    return sub, old, make_nice(td), td.width


def _check_t(t, least):
    if t < least:
        raise ValueError(f"t must be at least {least}, got {t}")


def ptas_is(g: Graph, weights=None, t: int = 3, width_cap: int | None = None, roots=None):
    """Independent set of weight at least (1 - 1/t) of the optimum."""
    _check_t(t, 2)
    cap = default_width_cap(t) if width_cap is None else width_cap
    w = vertex_weights(g, weights)
    part = baker_partition(g, t, roots)
    best, widths = None, []
    for i, cls in enumerate(part.classes):
        sub, old, ntd, width = _solve_rest(g, set(range(g.n)) - cls, cap, f"shift {i}")
        widths.append(width)
        sol = dp.solve_wis(sub, [w[v] for v in old], ntd)
        if best is None or sol.value > best[0]:
            best = (sol.value, i, tuple(sorted(old[v] for v in sol.certificate)))
    value, shift, cert = best
    out = dp.DpSolution("wis", value, cert, {"shift": shift})
    return out, ApproxReport(value, shift, tuple(widths), Fraction(t - 1, t))


def cut_value(g: Graph, labels, weights=None) -> int:
    ew = edge_weights(g, weights)
    return sum(wt for (u, v), wt in ew.items() if labels[u] != labels[v])


def ptas_maxcut(g: Graph, weights=None, t: int = 3, width_cap: int | None = None, roots=None):
    """Cut of weight at least (1 - 2/t) of the optimum.

    The deleted class is added back greedily: each of its vertices, in id
    order, joins the side that cuts more weight towards already placed
    vertices (side 0 on ties). This never lowers the cut.
    """
    _check_t(t, 3)
    cap = default_width_cap(t) if width_cap is None else width_cap
    ew = edge_weights(g, weights)
    part = baker_partition(g, t, roots)
    best, widths = None, []
    for i, cls in enumerate(part.classes):
        sub, old, ntd, width = _solve_rest(g, set(range(g.n)) - cls, cap, f"shift {i}")
        widths.append(width)
        sub_w = {(a, b): ew[(old[a], old[b])] for a, b in sub.edges()}
        sol = dp.solve_maxcut(sub, sub_w, ntd)
        labels = [None] * g.n
        for a, side in enumerate(sol.certificate):
            labels[old[a]] = side
        for v in sorted(cls):
            gain = [0, 0]
            for u in g.adj[v]:
                if labels[u] is not None:
                    gain[1 - labels[u]] += ew[(min(u, v), max(u, v))]
            labels[v] = 1 if gain[1] > gain[0] else 0
        value = cut_value(g, labels, ew)
        if best is None or value > best[0]:
            best = (value, i, tuple(labels))
    value, shift, labels = best
    out = dp.DpSolution("maxcut", value, labels, {"shift": shift})
    return out, ApproxReport(value, shift, tuple(widths), Fraction(t - 2, t))


def slabs(max_level: int, t: int, shift: int) -> list[tuple[range, range]]:
    """(slab levels, target levels) pairs for one shift.

    Target ranges are t consecutive levels starting at levels congruent to
    ``shift`` mod t and tile 0..max_level. Each slab adds one level on both
    sides of its target range, so neighbouring slabs share two levels.
    """
    start = shift % t - t if shift % t else 0
    out = []
    while start <= max_level:
        inner = range(max(start, 0), min(start + t, max_level + 1))
        if len(inner):
            out.append((range(max(start - 1, 0), min(start + t + 1, max_level + 1)), inner))
        start += t
    return out


def ptas_domset(g: Graph, t: int = 3, width_cap: int | None = None, roots=None):
    """Dominating set from overlapping slabs of t + 2 BFS levels.

    Every target vertex has its closed neighbourhood inside its slab, so
    the union of the per-slab solutions dominates the whole graph.
    """
    _check_t(t, 3)
    cap = default_width_cap(t) if width_cap is None else width_cap
    lv = bfs_layers(g, roots)
    layers = lv.layers()
    top = len(layers) - 1
    best, widths = None, []
    for shift in range(t):
        chosen = set()
        shift_width = -1
        for slab, inner in slabs(top, t, shift):
            keep = [v for lvl in slab for v in layers[lvl]]
            sub, old, ntd, width = _solve_rest(g, keep, cap, f"shift {shift}")
            shift_width = max(shift_width, width)
            new_id = {v: i for i, v in enumerate(old)}
            targets = [new_id[v] for lvl in inner for v in layers[lvl]]
            sol = dp.solve_ds(sub, ntd, targets)
            chosen.update(old[v] for v in sol.certificate)
        widths.append(shift_width)
        if best is None or len(chosen) < best[0]:
            best = (len(chosen), shift, tuple(sorted(chosen)))
    value, shift, cert = best
    out = dp.DpSolution("ds", value, cert, {"shift": shift})
    return out, ApproxReport(value, shift, tuple(widths), Fraction(t + 2, t))


def decompose_two_parts(g: Graph, roots=None) -> tuple[frozenset, frozenset]:
    """Even and odd BFS levels."""
    lv = bfs_layers(g, roots)
    even = frozenset(v for v in range(g.n) if lv.level[v] % 2 == 0)
    return even, frozenset(range(g.n)) - even


def two_part_color(g: Graph, partition, width_cap: int = 12):
    """Proper colouring using chi(G[A]) + chi(G[B]) <= 2 chi(G) colours.

    Each part is coloured optimally; B's colours are shifted past A's, so
    edges between the parts are always bichromatic.
    """
    a, b = set(partition[0]), set(partition[1])
    if a & b or a | b != set(range(g.n)):
        raise ValueError("partition must split the vertex set into two disjoint parts")
    colors = [0] * g.n
    offset = 0
    widths = []
    for i, part in enumerate((a, b)):
        sub, old, ntd, width = _solve_rest(g, part, width_cap, f"part {i}")
        widths.append(width)
        sol = dp.chromatic_number(sub, ntd)
        for v, c in enumerate(sol.certificate):
            colors[old[v]] = c + offset
        offset += sol.value
    return tuple(colors), ApproxReport(offset, 0, tuple(widths), Fraction(2))
