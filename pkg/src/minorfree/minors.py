"""Minor and odd-minor models: verification and exhaustive search.

The search keeps one (possibly empty) branch set per vertex of H and only
ever grows a set towards an H-edge that is not yet realised. Any minimal
model that extends the current sets can be reached this way, so the search
is exhaustive; visited states are memoised up to automorphisms of H.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .graph import CapExceeded, Graph

MAX_PATTERN_VERTICES = 5
MAX_HOST_VERTICES = 20


class ModelError(ValueError):
    """The model refers to vertices or edges that do not exist."""


class SearchTooLarge(CapExceeded):
    pass


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[tuple[int, int], ...], ...]
    connectors: dict = field(compare=False)  # (a, b) with a < b -> (x, y), x in set a

    def to_json(self, coloring: dict | None = None) -> dict:
        out = {
            "branch_sets": [list(b) for b in self.branch_sets],
            "tree_edges": [[list(e) for e in es] for es in self.tree_edges],
            "connectors": {f"{a}-{b}": list(xy) for (a, b), xy in sorted(self.connectors.items())},
        }
        if coloring is not None:
            out["coloring"] = {str(v): c for v, c in sorted(coloring.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MinorModel":
        conns = {}
        for key, xy in data["connectors"].items():
            a, b = (int(p) for p in key.split("-"))
            conns[(a, b)] = tuple(xy)
        return cls(tuple(tuple(b) for b in data["branch_sets"]),
                   tuple(tuple(tuple(e) for e in es) for es in data["tree_edges"]), conns)


def _check_shape(g: Graph, h: Graph, m: MinorModel):
    if len(m.branch_sets) != h.n or len(m.tree_edges) != h.n:
        raise ModelError(f"model has {len(m.branch_sets)} branch sets for a pattern with {h.n} vertices")
    for bs in m.branch_sets:
        for v in bs:
            if not 0 <= v < g.n:
                raise ModelError(f"branch vertex {v} out of range")
    for es in m.tree_edges:
        for e in es:
            if len(e) != 2 or not all(0 <= x < g.n for x in e):
                raise ModelError(f"bad tree edge {e}")
    for key, xy in m.connectors.items():
        if len(key) != 2 or not all(0 <= a < h.n for a in key):
            raise ModelError(f"connector key {key} is not a pattern vertex pair")
        if len(xy) != 2 or not all(0 <= x < g.n for x in xy):
            raise ModelError(f"bad connector edge {xy}")


def verify_model(g: Graph, h: Graph, m: MinorModel) -> bool:
    """True iff ``m`` is a model of ``h`` in ``g``.

    Raises :class:`ModelError` when the model is malformed (ids out of range),
    which is distinct from a well-formed model that fails a condition.
    """
    _check_shape(g, h, m)
    seen = set()
    for i, bs in enumerate(m.branch_sets):
        members = set(bs)
        if not members or len(members) != len(bs) or members & seen:
            return False
        seen |= members
        es = m.tree_edges[i]
        if len(es) != len(members) - 1:
            return False
        for x, y in es:
            if x not in members or y not in members or not g.has_edge(x, y):
                return False
        if not _spans(members, es):
            return False
    owner = {v: i for i, bs in enumerate(m.branch_sets) for v in bs}
    wanted = {(a, b) for a, b in h.edges()}
    keys = {(min(k), max(k)) for k in m.connectors}
    if keys != wanted or len(keys) != len(m.connectors):
        return False
    for (a, b), (x, y) in m.connectors.items():
        if not g.has_edge(x, y) or {owner.get(x), owner.get(y)} != {a, b}:
            return False
    return True


def _spans(members, edges) -> bool:
    adj = {v: [] for v in members}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == members


def _relative_colors(bs, edges) -> dict:
    """2-colouring of a spanning tree, lowest vertex coloured 0."""
    adj = {v: [] for v in bs}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    start = min(bs)
    color = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
    return color


class _ParityUnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.parity = [0] * n  # parity to parent

    def find(self, a):
        path = []
        while self.parent[a] != a:
            path.append(a)
            a = self.parent[a]
        # compress, accumulating parity to the root
        acc = 0
        for x in reversed(path):
            acc ^= self.parity[x]
            self.parity[x] = acc
            self.parent[x] = a
        return a

    def parity_of(self, a):
        self.find(a)
        return self.parity[a] if self.parent[a] != a else 0

    def union(self, a, b, p) -> bool:
        """Impose bit(a) xor bit(b) == p; False on contradiction."""
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity_of(a), self.parity_of(b)
        if ra == rb:
            return pa ^ pb == p
        if ra > rb:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ p
        return True


def verify_odd_model(g: Graph, h: Graph, m: MinorModel) -> dict | None:
    """A colouring making tree edges bichromatic and connectors monochromatic.

    Within a branch set the tree fixes the colouring up to one flip bit;
    each connector then demands that two flip bits agree or differ, which is
    decided with a parity union-find.
    """
    if not verify_model(g, h, m):
        raise ModelError("not a valid minor model")
    rel = {}
    for bs, es in zip(m.branch_sets, m.tree_edges):
        rel.update(_relative_colors(bs, es))
    owner = {v: i for i, bs in enumerate(m.branch_sets) for v in bs}
    uf = _ParityUnionFind(h.n)
    for (a, b), (x, y) in sorted(m.connectors.items()):
        # colour(x) = rel(x) ^ flip(owner x) must equal colour(y)
        if not uf.union(owner[x], owner[y], rel[x] ^ rel[y]):
            return None
    flips = [uf.parity_of(i) for i in range(h.n)]
    return {v: rel[v] ^ flips[owner[v]] for v in sorted(owner)}


# --------------------------------------------------------------------------
# search

def _automorphisms(h: Graph) -> list[tuple[int, ...]]:
    edges = set(h.edges())
    degs = [h.degree(v) for v in range(h.n)]
    out = []
    for perm in itertools.permutations(range(h.n)):
        if any(degs[perm[v]] != degs[v] for v in range(h.n)):
            continue
        if all((min(perm[a], perm[b]), max(perm[a], perm[b])) in edges for a, b in edges):
            out.append(perm)
    return out


def graph_automorphisms(g: Graph, cap: int = 256) -> list[tuple[int, ...]] | None:
    """All automorphisms of ``g`` as vertex permutations, or None if more than ``cap``."""
    n = g.n
    colors = [g.degree(v) for v in range(n)]
    while True:
        sig = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(n)]
        relabel = {x: i for i, x in enumerate(sorted(set(sig)))}
        new = [relabel[x] for x in sig]
        if len(set(new)) == len(set(colors)):
            colors = new
            break
        colors = new
    order = sorted(range(n), key=lambda v: (sum(1 for c in colors if c == colors[v]), v))
    out = []
    perm = [-1] * n
    taken = [False] * n

    def extend(i):
        if len(out) > cap:
            return
        if i == n:
            out.append(tuple(perm))
            return
        v = order[i]
        for u in range(n):
            if taken[u] or colors[u] != colors[v]:
                continue
            if any(g.has_edge(v, w) != g.has_edge(u, perm[w]) for w in order[:i]):
                continue
            perm[v] = u
            taken[u] = True
            extend(i + 1)
            taken[u] = False
            perm[v] = -1

    extend(0)
    return None if len(out) > cap else out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    """Growth search shared by the plain and odd variants.

    A state is a tuple over pattern vertices of ``(members, colour-1 members)``
    bitmasks; colours are relative to the set and only tracked when ``odd``.
    """

    def __init__(self, g: Graph, h: Graph, odd: bool):
        if h.n > MAX_PATTERN_VERTICES or g.n > MAX_HOST_VERTICES:
            raise SearchTooLarge("instance too large for exact minor search "
                                 f"(pattern <= {MAX_PATTERN_VERTICES}, host <= {MAX_HOST_VERTICES} vertices)")
        self.g, self.h, self.odd = g, h, odd
        self.masks = g.masks
        self.full = (1 << g.n) - 1
        self.order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
        rank = {v: i for i, v in enumerate(self.order)}
        self.hedges = sorted(h.edges(), key=lambda e: sorted((rank[e[0]], rank[e[1]])))
        self.hadj = [h.adj[v] for v in range(h.n)]
        self.autos = _automorphisms(h)
        self.symmetric = len(self.autos) == math.factorial(h.n)
        self.transitive = all(any(p[self.order[0]] == v for p in self.autos) for v in range(h.n))
        gauto = graph_automorphisms(g) or [tuple(range(g.n))]
        self.gorbit = [0] * g.n
        for p in gauto:
            for v in range(g.n):
                self.gorbit[v] |= 1 << p[v]
        # byte-wise image tables so a mask maps in a few lookups
        self.gtabs = []
        if len(gauto) > 1:
            for p in gauto:
                tabs = []
                for base in range(0, g.n, 8):
                    tab = [0] * 256
                    for byte in range(1, 256):
                        low = byte & -byte
                        v = base + low.bit_length() - 1
                        tab[byte] = tab[byte ^ low] | ((1 << p[v]) if v < g.n else 0)
                    tabs.append(tab)
                self.gtabs.append(tabs)
        self.dead = 0
        self.seen = set()
        self.nodes = 0

    def canon(self, state):
        if not self.gtabs:
            return self._canon_h(state)
        best = None
        for tabs in self.gtabs:
            mapped = tuple((self._img(m, tabs), self._img(c, tabs)) for m, c in state)
            key = self._canon_h(mapped)
            if best is None or key < best:
                best = key
        return best

    @staticmethod
    def _img(mask, tabs):
        out = 0
        for tab in tabs:
            out |= tab[mask & 255]
            mask >>= 8
        return out

    def _canon_h(self, state):
        if self.odd:
            state = tuple((m, c ^ m if c & m & -m else c) for m, c in state)
        if self.symmetric:
            return tuple(sorted(state))
        return min(tuple(state[p[i]] for i in range(len(state))) for p in self.autos)

    def nbr(self, mask):
        out = 0
        masks = self.masks
        while mask:
            low = mask & -mask
            out |= masks[low.bit_length() - 1]
            mask ^= low
        return out

    def components(self, free):
        comps = []
        rest = free
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                frontier = self.nbr(frontier) & free & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    def sides(self, region):
        """Colour-1 vertices of a proper 2-colouring of G[region], or None."""
        side = 0
        seen = 0
        rest = region
        while rest:
            start = rest & -rest
            seen |= start
            frontier, colour = start, 0
            while frontier:
                if colour:
                    side |= frontier
                nxt = self.nbr(frontier) & region
                if nxt & frontier:
                    return None
                # an edge back into an already coloured vertex of the same colour
                same = side if colour else (seen & ~side)
                if nxt & same & ~frontier:
                    return None
                frontier = nxt & ~seen
                seen |= frontier
                colour ^= 1
            rest &= ~seen
        return side

    def connector_parities(self, state, a, b):
        ma, ca = state[a]
        mb, cb = state[b]
        found = set()
        masks = self.masks
        for x in _bits(ma):
            hit = masks[x] & mb
            if not hit:
                continue
            cx = (ca >> x) & 1
            if hit & cb:
                found.add(cx ^ 1)
            if hit & ~cb:
                found.add(cx)
            if len(found) == 2:
                break
        return found

    def run(self):
        empty = tuple((0, 0) for _ in range(self.h.n))
        if self.h.n == 0:
            return empty
        first = self.order[0]
        for v in range(self.g.n):
            if (self.dead >> v) & 1:
                continue
            state = list(empty)
            state[first] = (1 << v, 0)
            found = self.dfs(tuple(state))
            if found:
                return found
            if self.transitive:
                # every model through v (or an image of v under Aut(G)) maps
                # onto one with v in the first set
                self.dead |= self.gorbit[v]
        return None

    def dfs(self, state):
        key = self.canon(state)
        if key in self.seen:
            return None
        self.seen.add(key)
        self.nodes += 1
        used = 0
        for m, _ in state:
            used |= m
        free = self.full & ~used & ~self.dead
        empties = [a for a in self.order if not state[a][0]]
        if bin(free).count("1") < len(empties):
            return None
        comps = self.components(free)
        nb = [self.nbr(m) if m else 0 for m, _ in state]

        # region each empty pattern vertex may still occupy
        allowed = {}
        for c in empties:
            need = [nb[b] for b in self.hadj[c] if state[b][0]]
            region = 0
            for comp in comps:
                if all(comp & x for x in need):
                    region |= comp
            if not region:
                return None
            allowed[c] = region
        for c in empties:
            for d in self.hadj[c]:
                if d in allowed and not any(comp & allowed[c] and comp & allowed[d] for comp in comps):
                    return None

        missing, single, route = [], [], {}
        for a, b in self.hedges:
            ma, mb = state[a][0], state[b][0]
            if ma and mb:
                par = self.connector_parities(state, a, b)
                if len(par) == 1:
                    single.append((a, b, next(iter(par))))
                if not par or (self.odd and len(par) == 1):
                    r = 0
                    for comp in comps:
                        if comp & nb[a] and comp & nb[b]:
                            r |= comp
                    route[(a, b)] = r
                    if not par:
                        if not r:
                            return None
                        missing.append((a, b))
            else:
                missing.append((a, b))

        if self.odd and not self.parities_possible(state, free):
            return None

        if not missing and not empties:
            if not self.odd:
                return state
            conflict = self.parity_conflict(single)
            if conflict is None:
                return state
            candidates = [self.edge_moves(state, e, nb, route, allowed) for e in conflict]
        elif empties:
            # the final branch set of an empty vertex lies inside its allowed region
            c = min(empties, key=lambda x: (bin(allowed[x]).count("1"), self.order.index(x)))
            candidates = [[(c, v, 0) for v in _bits(allowed[c])]]
        else:
            options = [self.edge_moves(state, e, nb, route, allowed) for e in missing]
            candidates = [min(options, key=len)]
        for moves in candidates:
            for a, v, col in moves:
                m, cm = state[a]
                new = list(state)
                new[a] = (m | (1 << v), cm | (col << v))
                found = self.dfs(tuple(new))
                if found:
                    return found
        return None

    def edge_moves(self, state, e, nb, route, allowed):
        a, b = e
        out = []
        for x, y in ((a, b), (b, a)):
            mx, cx = state[x]
            if not mx:
                continue
            if state[y][0]:
                targets = nb[x] & route[(a, b)]
            else:
                targets = nb[x] & allowed[y]
                out.extend((y, v, 0) for v in _bits(targets))
            for v in _bits(targets):
                if not self.odd:
                    out.append((x, v, 0))
                    continue
                att = self.masks[v] & mx
                if att & cx:
                    out.append((x, v, 0))
                if att & ~cx:
                    out.append((x, v, 1))
        return out

    def parities_possible(self, state, free):
        """False if connector parities already forced by bipartite regions clash.

        When G[S_a | S_b | free] is bipartite every future colouring of the
        two sets follows its bipartition, which pins the parity of any
        connector between them.
        """
        uf = _ParityUnionFind(self.h.n)
        for a, b in self.hedges:
            (ma, ca), (mb, cb) = state[a], state[b]
            if not (ma and mb):
                continue
            side = self.sides(ma | mb | free)
            if side is None:
                continue
            xa, xb = ma & -ma, mb & -mb
            ga = (1 if ca & xa else 0) ^ (1 if side & xa else 0)
            gb = (1 if cb & xb else 0) ^ (1 if side & xb else 0)
            if not uf.union(a, b, 1 ^ ga ^ gb):
                return False
        return True

    def parity_conflict(self, single):
        """Edges of one inconsistent parity cycle, or None if consistent."""
        uf = _ParityUnionFind(self.h.n)
        adj = {}
        for a, b, p in single:
            if not uf.union(a, b, p):
                path = _tree_path(adj, a, b)
                return [(min(x, y), max(x, y)) for x, y in zip(path, path[1:])] + [(a, b)]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return None

    def to_model(self, state):
        g = self.g
        sets, trees = [], []
        for m, c in state:
            members = sorted(_bits(m))
            sets.append(tuple(members))
            edges = []
            seen = {members[0]}
            queue = deque([members[0]])
            while queue:
                u = queue.popleft()
                for w in g.adj[u]:
                    if w in seen or not (m >> w) & 1:
                        continue
                    if self.odd and ((c >> u) & 1) == ((c >> w) & 1):
                        continue
                    seen.add(w)
                    edges.append((min(u, w), max(u, w)))
                    queue.append(w)
            trees.append(tuple(edges))
        conns = {}
        for a, b in self.h.edges():
            conns[(a, b)] = next((x, y) for x in sets[a] for y in g.adj[x] if y in sets[b])
        return MinorModel(tuple(sets), tuple(trees), conns)


def _tree_path(adj, a, b):
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in adj.get(u, ()):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def find_minor_model(g: Graph, h: Graph) -> MinorModel | None:
    """A model of ``h`` in ``g`` or None; exhaustive within the size caps."""
    search = _Search(g, h, odd=False)
    state = search.run()
    return None if state is None else search.to_model(state)


def find_odd_minor_model(g: Graph, h: Graph):
    """``(model, colouring)`` for an odd model of ``h`` in ``g``, or None."""
    search = _Search(g, h, odd=True)
    state = search.run()
    if state is None:
        return None
    # the colour-annotated state may still need the right connector choice
    model = _pick_odd_connectors(g, h, search, state)
    coloring = verify_odd_model(g, h, model)
    if coloring is None:
        raise AssertionError("odd search produced an uncolourable model")
    return model, coloring


def _pick_odd_connectors(g, h, search, state):
    base = search.to_model(state)
    rel = {}
    for bs, es in zip(base.branch_sets, base.tree_edges):
        rel.update(_relative_colors(bs, es))
    # candidate connectors per edge grouped by parity of relative colours
    options = {}
    for a, b in h.edges():
        by_par = {}
        for x in base.branch_sets[a]:
            for y in g.adj[x]:
                if y in base.branch_sets[b]:
                    by_par.setdefault(rel[x] ^ rel[y], (x, y))
        options[(a, b)] = sorted(by_par.items())
    edges = sorted(options)
    for choice in itertools.product(*(options[e] for e in edges)):
        uf = _ParityUnionFind(h.n)
        if all(uf.union(a, b, p) for (a, b), (p, _) in zip(edges, choice)):
            conns = {e: xy for e, (_, xy) in zip(edges, choice)}
            return MinorModel(base.branch_sets, base.tree_edges, conns)
    raise AssertionError("no consistent connector choice")


def has_odd_minor(g: Graph, h: Graph) -> bool:
    return find_odd_minor_model(g, h) is not None


def has_minor(g: Graph, h: Graph) -> bool:
    return find_minor_model(g, h) is not None
