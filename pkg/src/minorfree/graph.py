"""Simple undirected graphs on dense integer vertex ids, plus generators.

Vertices are ``0..n-1``. A :class:`Graph` is immutable once built; every
operation here returns a new graph.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

INT64_MAX = 2**63 - 1


class CapExceeded(ValueError):
    """An instance is larger than a solver's configured limit."""


class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Self-loops, duplicate edges and out-of-range endpoints are rejected with
    ``ValueError``; use :meth:`from_edges` with ``simplify=True`` to drop them
    silently instead.
    """

    __slots__ = ("n", "adj", "m", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._masks = tuple(sum(1 << w for w in s) for s in self.adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], simplify: bool = False) -> "Graph":
        if simplify:
            edges = {(min(u, v), max(u, v)) for u, v in edges if u != v}
            edges = sorted(edges)
        return cls(n, edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and (self._masks[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def neighbor_mask(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitmask over vertex ids."""
        return self._masks[v]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def __eq__(self, other):
        if isinstance(other, Graph):
            return self.n == other.n and self.adj == other.adj
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def audit(g: Graph) -> list[str]:
    """Return a list of broken representation invariants (empty if sound)."""
    problems = []
    total = 0
    for v, nb in enumerate(g.adj):
        total += len(nb)
        if any(a >= b for a, b in zip(nb, nb[1:])):
            problems.append(f"adjacency of {v} not strictly sorted")
        for w in nb:
            if w == v:
                problems.append(f"self-loop at {v}")
            elif not (0 <= w < g.n):
                problems.append(f"neighbour {w} of {v} out of range")
            elif v not in g.adj[w]:
                problems.append(f"asymmetric adjacency {v}->{w}")
    if total != 2 * g.m:
        problems.append(f"m={g.m} but adjacency total is {total}")
    return problems


# --------------------------------------------------------------------------
# weights

def vertex_weights(g: Graph, weights=None) -> list[int]:
    """Normalise vertex weights to a list of non-negative ints (unit if None)."""
    if weights is None:
        return [1] * g.n
    if isinstance(weights, dict):
        for v in weights:
            if not (0 <= v < g.n):
                raise ValueError(f"weight for unknown vertex {v}")
        out = [int(weights.get(v, 0)) for v in range(g.n)]
    else:
        out = [int(w) for w in weights]
        if len(out) != g.n:
            raise ValueError(f"expected {g.n} vertex weights, got {len(out)}")
    _check_weight_values(out)
    return out


def edge_weights(g: Graph, weights=None) -> dict[tuple[int, int], int]:
    """Normalise edge weights to ``{(u, v): w}`` with ``u < v`` (unit if None)."""
    if weights is None:
        return {e: 1 for e in g.edges()}
    out = {}
    for (u, v), w in weights.items():
        key = (min(u, v), max(u, v))
        if not g.has_edge(*key):
            raise ValueError(f"weight for non-edge {key}")
        out[key] = int(w)
    for e in g.edges():
        out.setdefault(e, 0)
    _check_weight_values(out.values())
    return out


def _check_weight_values(values) -> None:
    total = 0
    for w in values:
        if w < 0:
            raise ValueError(f"negative weight {w}")
        total += w
    if total > INT64_MAX:
        raise OverflowError("total weight exceeds the 64-bit range")


# --------------------------------------------------------------------------
# traversal and basic operations

@dataclass(frozen=True)
class LevelMap:
    level: tuple[int, ...]
    roots: tuple[int, ...]

    def layers(self) -> list[list[int]]:
        if not self.level:
            return []
        out: list[list[int]] = [[] for _ in range(max(self.level) + 1)]
        for v, lv in enumerate(self.level):
            out[lv].append(v)
        return out


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def bfs_layers(g: Graph, roots: Sequence[int] | None = None) -> LevelMap:
    """Multi-source BFS distances to the nearest root.

    Without ``roots`` the lowest vertex of every component is used.
    """
    if roots is None:
        roots = [c[0] for c in components(g)]
    roots = tuple(roots)
    level = [-1] * g.n
    queue = deque()
    for r in roots:
        if not (0 <= r < g.n):
            raise ValueError(f"root {r} is not a vertex")
        if level[r] < 0:
            level[r] = 0
            queue.append(r)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if level[w] < 0:
                level[w] = level[u] + 1
                queue.append(w)
    for v in range(g.n):
        if level[v] < 0:
            raise ValueError(f"vertex {v} lies in a component without a root")
    return LevelMap(tuple(level), roots)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Identify the endpoints of edge ``uv``; ids above ``max(u, v)`` shift down."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    lo, hi = min(u, v), max(u, v)

    def rename(w):
        if w == hi:
            return lo
        return w - 1 if w > hi else w

    edges = {(min(a, b), max(a, b)) for a, b in ((rename(x), rename(y)) for x, y in g.edges()) if a != b}
    return Graph(g.n - 1, sorted(edges))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``keep``; returns the graph and the new-id -> old-id list."""
    old = sorted(set(keep))
    for v in old:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} not in graph")
    new_id = {v: i for i, v in enumerate(old)}
    edges = [(new_id[a], new_id[b]) for a in old for b in g.adj[a] if a < b and b in new_id]
    return Graph(len(old), edges), old


def delete_vertices(g: Graph, drop: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = set(drop)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


class TwoColoring(NamedTuple):
    """Exactly one field is set: a proper 2-colouring, or an odd cycle."""

    coloring: tuple[int, ...] | None
    odd_cycle: list[int] | None


def two_coloring(g: Graph) -> TwoColoring:
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return TwoColoring(None, _odd_cycle(u, w, parent, depth))
    return TwoColoring(tuple(color), None)


def _odd_cycle(u, w, parent, depth):
    # BFS tree paths from u and w up to their common ancestor, closed by edge uw.
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    return left + right[-2::-1]


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g).coloring is not None


# --------------------------------------------------------------------------
# generators

def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """Cycle on ``n`` vertices; for ``n < 3`` this is the path."""
    if n < 3:
        return path(n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def empty(n: int) -> Graph:
    return Graph(n)


def grid(rows: int, cols: int) -> Graph:
    """Grid graph; vertex ``(i, j)`` has id ``i * cols + j``."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def random_subgrid(rows: int, cols: int, p: float, seed: int) -> Graph:
    """Keep each grid edge independently with probability ``p``."""
    _check_p(p)
    rng = random.Random(seed)
    full = grid(rows, cols)
    return Graph(full.n, [e for e in full.edges() if rng.random() < p])


def random_bipartite(a: int, b: int, p: float, seed: int) -> Graph:
    """Random subgraph of K_{a,b}; the left side is ``0..a-1``."""
    _check_p(p)
    rng = random.Random(seed)
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p])


def random_graph(n: int, p: float, seed: int) -> Graph:
    _check_p(p)
    rng = random.Random(seed)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, simplify=True)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.n
    return Graph(offset, edges)


def _check_p(p):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")


_GENERATORS = {
    "grid": grid,
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "star": star,
    "empty": empty,
    "random_subgrid": random_subgrid,
    "random_bipartite": random_bipartite,
    "random": random_graph,
    "petersen": petersen,
}


def generate(kind: str, *args) -> Graph:
    """Build a graph by family name, e.g. ``generate("grid", 3, 4)``."""
    try:
        fn = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown graph family {kind!r}") from None
    for a in args:
        if isinstance(a, int) and a < 0:
            raise ValueError("sizes must be non-negative")
    return fn(*args)
