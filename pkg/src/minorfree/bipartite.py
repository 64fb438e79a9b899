"""Max flow, bipartite matching, weighted bipartite cover / independent set,
and an exact solver over decompositions into bounded-width and bipartite
pieces glued along a small boundary."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .dp import DpSolution, ForcedSets, InfeasibleError, NO_FORCING, solve_wis, solve_wvc
from .graph import CapExceeded, Graph, induced_subgraph, two_coloring, vertex_weights
from .treedec import WidthCapExceeded, heuristic_decompose, make_nice

BOUNDARY_CAP = 20


class BoundaryCapExceeded(CapExceeded):
    pass


class FlowNetwork:
    """Directed network with integer capacities; Dinic's algorithm.

    Arcs are stored in paired residual form: arc ``i`` and ``i ^ 1`` are
    reverses of each other.
    """

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []
        self.flow_value = None
        self.cut_value = None

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        if capacity < 0:
            raise ValueError("capacities must be non-negative")
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.orig.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        self.orig.append(0)
        return len(self.to) - 2

    def _levels(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if self.cap[a] > 0 and level[y] < 0:
                    level[y] = level[x] + 1
                    queue.append(y)
        return level if level[t] >= 0 else None

    def _blocking(self, s, t, level):
        # iterative DFS with per-node arc pointers
        ptr = [0] * self.n
        total = 0
        while True:
            path = []
            x = s
            while x != t:
                arcs = self.head[x]
                while ptr[x] < len(arcs):
                    a = arcs[ptr[x]]
                    y = self.to[a]
                    if self.cap[a] > 0 and level[y] == level[x] + 1:
                        break
                    ptr[x] += 1
                if ptr[x] == len(arcs):
                    if x == s:
                        return total
                    level[x] = -1  # dead end
                    a = path.pop()
                    x = self.to[a ^ 1]
                    ptr[x] += 1
                    continue
                a = arcs[ptr[x]]
                path.append(a)
                x = self.to[a]
            push = min(self.cap[a] for a in path)
            for a in path:
                self.cap[a] -= push
                self.cap[a ^ 1] += push
            total += push

    def max_flow(self, s: int, t: int) -> int:
        """Maximum s-t flow; also records the capacity of the residual cut."""
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                break
            flow += self._blocking(s, t, level)
        side = self.source_side(s)
        cut = sum(self.orig[a] for x in side for a in self.head[x] if self.to[a] not in side)
        if cut != flow:
            raise AssertionError(f"flow {flow} differs from cut {cut}")
        self.flow_value, self.cut_value = flow, cut
        return flow

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if self.cap[a] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def arc_flow(self, a: int) -> int:
        return self.orig[a] - self.cap[a]


def check_sides(g: Graph, sides) -> tuple[list[int], list[int]]:
    left, right = sorted(set(sides[0])), sorted(set(sides[1]))
    if set(left) & set(right):
        raise ValueError(f"sides overlap at {sorted(set(left) & set(right))}")
    if sorted(left + right) != list(range(g.n)):
        raise ValueError("sides must cover every vertex exactly once")
    lset = set(left)
    for u, v in g.edges():
        if (u in lset) == (v in lset):
            raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")
    return left, right


def max_bipartite_matching(g: Graph, sides) -> list[tuple[int, int]]:
    """Maximum-cardinality matching as sorted (u, v) pairs with u < v."""
    left, right = check_sides(g, sides)
    s, t = g.n, g.n + 1
    net = FlowNetwork(g.n + 2)
    for u in left:
        net.add_arc(s, u, 1)
    for v in right:
        net.add_arc(v, t, 1)
    cross = []
    for u in left:
        for v in g.adj[u]:
            cross.append((net.add_arc(u, v, 1), u, v))
    net.max_flow(s, t)
    return sorted((min(u, v), max(u, v)) for a, u, v in cross if net.arc_flow(a))


def min_cut_cover(g: Graph, left, right, w, fin=frozenset(), fout=frozenset()):
    """Minimum-weight cover by a minimum cut; no range checks on ``w``.

    Returns the cover (including ``fin``) and the solved network.
    """
    inf = sum(w) + 1
    s, t = g.n, g.n + 1
    net = FlowNetwork(g.n + 2)
    for u in left:
        if u not in fin:
            net.add_arc(s, u, inf if u in fout else w[u])
    for v in right:
        if v not in fin:
            net.add_arc(v, t, inf if v in fout else w[v])
    for u in left:
        if u in fin:
            continue
        for v in g.adj[u]:
            if v not in fin:
                net.add_arc(u, v, inf)
    net.max_flow(s, t)
    reach = net.source_side(s)
    cover = set(fin)
    cover.update(u for u in left if u not in fin and u not in reach)
    cover.update(v for v in right if v not in fin and v in reach)
    return cover, net


def bip_weighted_vc(g: Graph, sides, weights=None, forced: ForcedSets = NO_FORCING) -> DpSolution:
    """Minimum-weight vertex cover of a bipartite graph by minimum cut.

    Network: source -> left vertex (its weight), right vertex -> sink (its
    weight), left -> right for each edge (infinite). Forced-in vertices are
    taken up front and removed; forced-out vertices get an infinite arc so
    the cut must take their neighbours instead.
    """
    left, right = check_sides(g, sides)
    forced.check(g.n)
    w = vertex_weights(g, weights)
    fin, fout = forced.forced_in, forced.forced_out
    for u, v in g.edges():
        if u in fout and v in fout:
            raise InfeasibleError(f"edge ({u}, {v}) has both ends forced out of the cover")
    cover, net = min_cut_cover(g, left, right, w, fin, fout)
    flow = net.flow_value
    value = sum(w[v] for v in cover)
    if value != flow + sum(w[v] for v in fin):
        raise AssertionError("cover weight disagrees with the cut value")
    stats = {"flow": flow, "cut": net.cut_value, "network_nodes": net.n, "network_arcs": len(net.to) // 2}
    return DpSolution("wvc", value, tuple(sorted(cover)), stats)


def bip_weighted_is(g: Graph, sides, weights=None, forced: ForcedSets = NO_FORCING) -> DpSolution:
    """Maximum-weight independent set as the complement of a minimum cover.

    Forcing is translated: in the set means out of the cover and vice versa.
    """
    w = vertex_weights(g, weights)
    for u, v in g.edges():
        if u in forced.forced_in and v in forced.forced_in:
            raise InfeasibleError(f"edge ({u}, {v}) has both ends forced into the independent set")
    cover = bip_weighted_vc(g, sides, w, ForcedSets(forced.forced_out, forced.forced_in))
    chosen = set(cover.certificate)
    cert = tuple(v for v in range(g.n) if v not in chosen)
    return DpSolution("wis", sum(w) - cover.value, cert, cover.stats)


# --------------------------------------------------------------------------
# piece decompositions

TW, BIP = "tw", "bip"


@dataclass(frozen=True)
class PieceDecomposition:
    pieces: tuple[tuple[frozenset, str], ...]
    boundary: frozenset

    @classmethod
    def build(cls, pieces, boundary=None) -> "PieceDecomposition":
        """``boundary`` defaults to the vertices shared by two or more pieces."""
        ps = tuple((frozenset(vs), kind) for vs, kind in pieces)
        seen, shared = set(), set()
        for vs, _ in ps:
            shared |= seen & vs
            seen |= vs
        b = frozenset(shared if boundary is None else set(boundary) | shared)
        return cls(ps, b)

    def to_json(self) -> dict:
        return {"pieces": [{"vertices": sorted(vs), "kind": kind} for vs, kind in self.pieces],
                "boundary": sorted(self.boundary)}

    @classmethod
    def from_json(cls, data: dict) -> "PieceDecomposition":
        return cls.build([(p["vertices"], p["kind"]) for p in data["pieces"]], data.get("boundary", ()))


def validate_pieces(g: Graph, pd: PieceDecomposition, cap: int = BOUNDARY_CAP) -> list[str]:
    """Problems with ``pd`` as a decomposition of ``g`` (empty when valid)."""
    errs = []
    count = [0] * g.n
    for i, (vs, kind) in enumerate(pd.pieces):
        if kind not in (TW, BIP):
            errs.append(f"piece {i} has unknown kind {kind!r}")
        for v in vs:
            if not 0 <= v < g.n:
                errs.append(f"piece {i} holds unknown vertex {v}")
            else:
                count[v] += 1
    for v in range(g.n):
        if count[v] == 0:
            errs.append(f"vertex {v} is in no piece")
        elif count[v] > 1 and v not in pd.boundary:
            errs.append(f"vertex {v} is shared by pieces but not on the boundary")
    for u, v in g.edges():
        if not any(u in vs and v in vs for vs, _ in pd.pieces):
            errs.append(f"edge ({u}, {v}) lies in no single piece")
    for i, (vs, kind) in enumerate(pd.pieces):
        if kind == BIP:
            sub, _ = induced_subgraph(g, vs - pd.boundary)
            if two_coloring(sub).odd_cycle is not None:
                errs.append(f"piece {i} is declared bipartite but has an odd cycle off the boundary")
    if len(pd.boundary) > cap:
        errs.append(f"boundary has {len(pd.boundary)} vertices, cap is {cap}")
    return errs


def hybrid_solve(g: Graph, pd: PieceDecomposition, problem: str, weights=None,
                 width_cap: int = 25, boundary_cap: int = BOUNDARY_CAP) -> DpSolution:
    """Exact minimum vertex cover or maximum independent set over pieces.

    Every in/out assignment of the boundary is tried. Given an assignment,
    each piece minus the boundary is solved on its own: boundary vertices
    left out of a cover force their piece neighbours in, and boundary
    vertices put in an independent set force their neighbours out. Boundary
    weight is counted once globally. Ties go to the lowest assignment, read
    as an integer with bit i for the i-th smallest boundary vertex.
    """
    if problem not in ("vc", "is"):
        raise ValueError(f"problem must be 'vc' or 'is', got {problem!r}")
    if len(pd.boundary) > boundary_cap:
        raise BoundaryCapExceeded(f"boundary has {len(pd.boundary)} vertices, cap is {boundary_cap}")
    errs = validate_pieces(g, pd, boundary_cap)
    if errs:
        kind_errs = [e for e in errs if "declared bipartite" in e]
        if kind_errs:
            raise ValueError(kind_errs[0])
        raise ValueError("invalid piece decomposition: " + "; ".join(errs[:3]))
    w = vertex_weights(g, weights)
    bnd = sorted(pd.boundary)
    bset = set(bnd)
    bidx = {v: i for i, v in enumerate(bnd)}
    masks = g.masks

    # pieces reduced to their interiors, prepared once
    prepared = []
    for vs, kind in pd.pieces:
        inner = sorted(vs - bset)
        sub, old = induced_subgraph(g, inner)
        sub_w = [w[v] for v in old]
        touching = {}  # boundary vertex -> interior neighbours (sub ids)
        new_id = {v: i for i, v in enumerate(old)}
        for b in bnd:
            if b in vs:
                touching[b] = [new_id[u] for u in g.adj[b] if u in new_id]
        if kind == TW:
            td = heuristic_decompose(sub)
            if td.width > width_cap:
                raise WidthCapExceeded(td.width, width_cap, f"piece {len(prepared)}")
            solver = (sub, make_nice(td), None)
        else:
            col = two_coloring(sub).coloring
            sides = ([v for v in range(sub.n) if col[v] == 0], [v for v in range(sub.n) if col[v] == 1])
            solver = (sub, None, sides)
        prepared.append((solver, sub_w, old, touching))

    best = None
    for a in range(1 << len(bnd)):
        chosen = [b for b in bnd if (a >> bidx[b]) & 1]
        cmask = sum(1 << b for b in chosen)
        feasible = True
        for b in bnd:
            nb = masks[b] & sum(1 << x for x in bnd)
            inb = (a >> bidx[b]) & 1
            if problem == "vc" and not inb and nb & ~cmask:
                feasible = False
            if problem == "is" and inb and nb & cmask:
                feasible = False
        if not feasible:
            continue
        total = sum(w[b] for b in chosen)
        cert = list(chosen)
        for (sub, ntd, sides), sub_w, old, touching in prepared:
            pinned = set()
            for b, inner in touching.items():
                inb = (a >> bidx[b]) & 1
                if (problem == "vc" and not inb) or (problem == "is" and inb):
                    pinned.update(inner)
            forced = ForcedSets(forced_in=pinned) if problem == "vc" else ForcedSets(forced_out=pinned)
            if ntd is not None:
                sol = (solve_wvc if problem == "vc" else solve_wis)(sub, sub_w, ntd, forced)
            else:
                sol = (bip_weighted_vc if problem == "vc" else bip_weighted_is)(sub, sides, sub_w, forced)
            total += sol.value
            cert.extend(old[v] for v in sol.certificate)
        if best is None or (total < best[0] if problem == "vc" else total > best[0]):
            best = (total, tuple(sorted(cert)), a)
    if best is None:
        raise InfeasibleError("no feasible boundary assignment")
    value, cert, a = best
    name = "wvc" if problem == "vc" else "wis"
    return DpSolution(name, value, cert, {"boundary": len(bnd), "assignment": a, "pieces": len(pd.pieces)})

