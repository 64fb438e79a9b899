"""Tree decompositions: validation, width, elimination heuristics, exact
treewidth for small graphs, and conversion to nice form."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .graph import CapExceeded, Graph

EXACT_TREEWIDTH_CAP = 18


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    host_n: int

    @classmethod
    def build(cls, bags, edges, host_n) -> "TreeDecomposition":
        return cls(tuple(tuple(sorted(set(b))) for b in bags),
                   tuple((int(a), int(b)) for a, b in edges), host_n)

    @property
    def width(self) -> int:
        return width(self)


class WidthCapExceeded(CapExceeded):
    """A decomposition came out wider than the caller allows."""

    def __init__(self, width: int, cap: int, where: str = ""):
        self.width, self.cap, self.where = width, cap, where
        super().__init__(f"{where + ': ' if where else ''}decomposition width {width} exceeds cap {cap}")


class Violation(NamedTuple):
    kind: str  # "non-tree" | "coverage" | "edge-coverage" | "connectivity"
    witness: object


def validate(g: Graph, t: TreeDecomposition) -> list[Violation]:
    """All violated decomposition conditions, each with a witness."""
    out = []
    k = len(t.bags)
    if k == 0:
        return [Violation("non-tree", "no nodes")]
    tree_adj: list[list[int]] = [[] for _ in range(k)]
    for a, b in t.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            out.append(Violation("non-tree", (a, b)))
            continue
        tree_adj[a].append(b)
        tree_adj[b].append(a)
    if len(t.edges) != k - 1:
        out.append(Violation("non-tree", f"{len(t.edges)} edges on {k} nodes"))
    reach = _reach(tree_adj, 0, range(k))
    if len(reach) != k:
        out.append(Violation("non-tree", f"node {min(set(range(k)) - reach)} unreachable"))

    holders: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(t.bags):
        for v in bag:
            if not (0 <= v < g.n):
                out.append(Violation("coverage", f"bag {i} holds unknown vertex {v}"))
            else:
                holders[v].append(i)
    for v in range(g.n):
        if not holders[v]:
            out.append(Violation("coverage", v))
    bag_sets = [set(b) for b in t.bags]
    for u, v in g.edges():
        if not any(v in bag_sets[i] for i in holders[u]):
            out.append(Violation("edge-coverage", (u, v)))
    for v in range(g.n):
        if len(holders[v]) > 1 and len(_reach(tree_adj, holders[v][0], holders[v])) != len(holders[v]):
            out.append(Violation("connectivity", v))
    return out


def _reach(tree_adj, start, allowed) -> set[int]:
    allowed = set(allowed)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in tree_adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def width(t: TreeDecomposition) -> int:
    return max((len(b) for b in t.bags), default=0) - 1


def adhesion(t: TreeDecomposition) -> int:
    return max((len(set(t.bags[a]) & set(t.bags[b])) for a, b in t.edges), default=0)


# --------------------------------------------------------------------------
# elimination orderings

def decomposition_from_ordering(g: Graph, order) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``.

    Each vertex yields the bag ``{v} | N(v)`` in the current fill graph and
    hangs below the bag of its earliest-eliminated remaining neighbour.
    Component roots are chained so the result is a single tree.
    """
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("ordering must be a permutation of the vertices")
    if g.n == 0:
        return TreeDecomposition(((),), (), 0)
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(g.adj[v]) for v in range(g.n)]
    bags, edges, roots = [], [], []
    for i, v in enumerate(order):
        later = nbrs[v]
        bags.append((v,) + tuple(sorted(later)))
        for a in later:
            nbrs[a].discard(v)
            nbrs[a].update(later - {a})
        if later:
            edges.append((i, pos[min(later, key=pos.__getitem__)]))
        else:
            roots.append(i)
    edges.extend((a, b) for a, b in zip(roots, roots[1:]))
    return TreeDecomposition.build(bags, edges, g.n)


def elimination_ordering(g: Graph, strategy: str = "min-fill") -> list[int]:
    if strategy not in ("min-degree", "min-fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    nbrs = [set(g.adj[v]) for v in range(g.n)]
    alive = set(range(g.n))
    order = []
    while alive:
        if strategy == "min-degree":
            v = min(alive, key=lambda x: (len(nbrs[x]), x))
        else:
            v = min(alive, key=lambda x: (_fill(nbrs, x), x))
        order.append(v)
        alive.discard(v)
        later = nbrs[v]
        for a in later:
            nbrs[a].discard(v)
            nbrs[a].update(later - {a})
    return order


def _fill(nbrs, v) -> int:
    nb = list(nbrs[v])
    missing = 0
    for i, a in enumerate(nb):
        na = nbrs[a]
        for b in nb[i + 1:]:
            if b not in na:
                missing += 1
    return missing


def heuristic_decompose(g: Graph, strategy: str = "min-fill") -> TreeDecomposition:
    return decomposition_from_ordering(g, elimination_ordering(g, strategy))


def exact_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    """Exact treewidth by dynamic programming over eliminated vertex sets.

    For each candidate bound ``k`` (from a degeneracy lower bound up to the
    min-fill upper bound) this explores every elimination prefix ``S`` in
    which each eliminated vertex had at most ``k`` neighbours in the fill
    graph at its turn; those neighbours are the vertices outside ``S``
    reachable from it through ``S``.
    """
    n = g.n
    if n > EXACT_TREEWIDTH_CAP:
        raise CapExceeded(f"exact treewidth limited to n <= {EXACT_TREEWIDTH_CAP}, got {n}")
    upper_order = elimination_ordering(g, "min-fill")
    upper = width(decomposition_from_ordering(g, upper_order))
    if n == 0:
        return -1, decomposition_from_ordering(g, [])
    lower = _degeneracy(g)
    for k in range(lower, upper):
        order = _ordering_within(g, k)
        if order is not None:
            return k, decomposition_from_ordering(g, order)
    return upper, decomposition_from_ordering(g, upper_order)


def _degeneracy(g: Graph) -> int:
    nbrs = [set(g.adj[v]) for v in range(g.n)]
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda x: len(nbrs[x]))
        best = max(best, len(nbrs[v]))
        for a in nbrs[v]:
            nbrs[a].discard(v)
        alive.discard(v)
    return best


def _ordering_within(g: Graph, k: int):
    """An elimination ordering of width <= k, or None."""
    n = g.n
    masks = g.masks
    full = (1 << n) - 1

    def q_size(s, v):
        # vertices outside s | {v} reachable from v through s
        comp = 1 << v
        frontier = comp
        outside = 0
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= masks[low.bit_length() - 1]
                f ^= low
            outside |= reach & ~s & ~(1 << v)
            new = reach & s & ~comp
            comp |= new
            frontier = new
        return bin(outside).count("1")

    parent = {0: None}
    layer = [0]
    while layer:
        nxt = []
        for s in layer:
            rest = full & ~s
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                t = s | low
                if t in parent:
                    continue
                if q_size(s, v) <= k:
                    parent[t] = (s, v)
                    nxt.append(t)
        if full in parent:
            order = []
            s = full
            while parent[s] is not None:
                s, v = parent[s]
                order.append(v)
            return order[::-1]
        layer = nxt
    return None


# --------------------------------------------------------------------------
# nice form

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted nice decomposition; node ids are in post-order (children first)."""

    kinds: tuple[str, ...]
    bags: tuple[tuple[int, ...], ...]
    vertex: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    root: int
    host_n: int

    def __len__(self):
        return len(self.kinds)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = tuple((c, p) for p, cs in enumerate(self.children) for c in cs)
        return TreeDecomposition(self.bags, edges, self.host_n)

    def check_kinds(self) -> list[str]:
        """Node-kind bag relations that fail (empty when well-formed)."""
        errs = []
        if self.bags[self.root]:
            errs.append("root bag not empty")
        for i, kind in enumerate(self.kinds):
            cs = self.children[i]
            bag = set(self.bags[i])
            v = self.vertex[i]
            if kind == LEAF:
                ok = not cs and not bag
            elif kind == INTRODUCE:
                ok = len(cs) == 1 and v in bag and set(self.bags[cs[0]]) == bag - {v}
            elif kind == FORGET:
                ok = len(cs) == 1 and v not in bag and set(self.bags[cs[0]]) == bag | {v}
            elif kind == JOIN:
                ok = len(cs) == 2 and all(set(self.bags[c]) == bag for c in cs)
            else:
                ok = False
            if not ok:
                errs.append(f"node {i} ({kind}) malformed")
        return errs


def make_nice(t: TreeDecomposition, root: int = 0) -> NiceTreeDecomposition:
    """Convert a valid decomposition into nice form with an empty root bag.

    Between a node and its child, vertices are forgotten first and then
    introduced, each in ascending order, so the width never grows.
    """
    k = len(t.bags)
    if not 0 <= root < k:
        raise ValueError(f"root {root} is not a node")
    tree_adj: list[list[int]] = [[] for _ in range(k)]
    for a, b in t.edges:
        tree_adj[a].append(b)
        tree_adj[b].append(a)

    kinds, bags, vertex, children = [], [], [], []

    def add(kind, bag, v, cs):
        kinds.append(kind)
        bags.append(bag)
        vertex.append(v)
        children.append(tuple(cs))
        return len(kinds) - 1

    def morph(node, src, dst):
        # chain from bag src (at node) to bag dst
        cur = set(src)
        for v in sorted(set(src) - set(dst)):
            cur.discard(v)
            node = add(FORGET, tuple(sorted(cur)), v, [node])
        for v in sorted(set(dst) - set(src)):
            cur.add(v)
            node = add(INTRODUCE, tuple(sorted(cur)), v, [node])
        return node

    # iterative post-order over the rooted tree
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in sorted(tree_adj[x], reverse=True):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    built = {}
    for x in reversed(order):
        bag = t.bags[x]
        subs = [morph(built[c], t.bags[c], bag)
                for c in sorted(tree_adj[x]) if parent.get(c) == x]
        if not subs:
            subs = [morph(add(LEAF, (), None, []), (), bag)]
        node = subs[0]
        for other in subs[1:]:
            node = add(JOIN, tuple(bag), None, [node, other])
        built[x] = node
    top = morph(built[root], t.bags[root], ())
    return NiceTreeDecomposition(tuple(kinds), tuple(bags), tuple(vertex),
                                 tuple(children), top, t.host_n)


def nice_decomposition(g: Graph, strategy: str = "min-fill") -> NiceTreeDecomposition:
    return make_nice(heuristic_decompose(g, strategy))


def to_json(t: TreeDecomposition, root: int | None = None) -> dict:
    return {"bags": [list(b) for b in t.bags], "edges": [list(e) for e in t.edges], "root": root}


def from_json(data: dict, host_n: int) -> TreeDecomposition:
    return TreeDecomposition.build(data["bags"], data["edges"], host_n)
