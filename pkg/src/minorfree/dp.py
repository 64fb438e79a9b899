"""Dynamic programming over nice tree decompositions.

States are bitmasks over global vertex ids restricted to the current bag.
Vertex contributions (weights, cut edges) are charged when a vertex is
forgotten, which happens exactly once per vertex, so join nodes simply add
the two child values.

Ties between optimal certificates are broken towards the set containing the
smallest vertex on which two candidates differ. This is folded into the DP
as a secondary objective ``sum(2 ** (n - 1 - v))`` compared lexicographically
after the value, which is additive and therefore exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, edge_weights, vertex_weights
from .treedec import FORGET, INTRODUCE, LEAF, NiceTreeDecomposition


class InfeasibleError(ValueError):
    """Forcing constraints admit no feasible solution."""


@dataclass(frozen=True)
class ForcedSets:
    forced_in: frozenset[int] = frozenset()
    forced_out: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "forced_in", frozenset(self.forced_in))
        object.__setattr__(self, "forced_out", frozenset(self.forced_out))
        if self.forced_in & self.forced_out:
            raise ValueError(f"vertices forced both in and out: {sorted(self.forced_in & self.forced_out)}")

    def check(self, n: int) -> None:
        for v in self.forced_in | self.forced_out:
            if not 0 <= v < n:
                raise ValueError(f"forced vertex {v} not in graph")


NO_FORCING = ForcedSets()


@dataclass(frozen=True)
class DpSolution:
    """Objective value plus certificate.

    The certificate is a sorted vertex tuple (independent set, cover,
    dominating set), a 0/1 side label per vertex (max cut) or a colour per
    vertex (colouring).
    """

    problem: str
    value: int
    certificate: tuple
    stats: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"problem": self.problem, "value": self.value,
                "certificate": list(self.certificate), "stats": dict(self.stats)}


def _stats(ntd, entries):
    return {"width": ntd.width, "nodes": len(ntd), "table_entries": entries}


def _check_ntd(g: Graph, ntd: NiceTreeDecomposition):
    if ntd.host_n != g.n:
        raise ValueError(f"decomposition is for {ntd.host_n} vertices, graph has {g.n}")
    # a bag missing an edge would make the DP silently ignore that edge
    covered = set()
    for bag in ntd.bags:
        mask = _mask(bag)
        for v in bag:
            m = g.masks[v] & mask
            while m:
                low = m & -m
                covered.add((v, low.bit_length() - 1))
                m ^= low
    if len(covered) != 2 * g.m:
        missing = next((u, v) for u, v in g.edges() if (u, v) not in covered)
        raise ValueError(f"edge {missing} is in no bag of the decomposition")


def _bit_key(n):
    return [1 << (n - 1 - v) for v in range(n)]


def _set_from_key(n, key):
    return tuple(v for v in range(n) if (key >> (n - 1 - v)) & 1)


# --------------------------------------------------------------------------
# independent set / vertex cover

def solve_wis(g: Graph, weights, ntd: NiceTreeDecomposition, forced: ForcedSets = NO_FORCING) -> DpSolution:
    """Maximum-weight independent set respecting ``forced``."""
    _check_ntd(g, ntd)
    forced.check(g.n)
    w = vertex_weights(g, weights)
    for v in forced.forced_in:
        if g.neighbor_mask(v) & _mask(forced.forced_in):
            raise InfeasibleError("forced_in is not independent")
    masks = g.masks
    fin, fout = _mask(forced.forced_in), _mask(forced.forced_out)

    def introduce(v, table):
        bit = 1 << v
        out = {}
        for s, val in table.items():
            if not fin & bit:
                out[s] = val
            if not fout & bit and not masks[v] & s:
                out[s | bit] = val
        return out

    return _run_subset_dp(g, ntd, w, introduce, maximize=True, problem="wis")


def solve_wvc(g: Graph, weights, ntd: NiceTreeDecomposition, forced: ForcedSets = NO_FORCING) -> DpSolution:
    """Minimum-weight vertex cover respecting ``forced``."""
    _check_ntd(g, ntd)
    forced.check(g.n)
    w = vertex_weights(g, weights)
    fout = _mask(forced.forced_out)
    for v in forced.forced_out:
        if g.neighbor_mask(v) & fout:
            raise InfeasibleError(f"both ends of an edge at {v} are forced out of the cover")
    masks = g.masks
    fin = _mask(forced.forced_in)

    def introduce(v, table, bag_mask):
        bit = 1 << v
        nb = masks[v] & bag_mask
        out = {}
        for s, val in table.items():
            if not fout & bit:
                out[s | bit] = val
            if not fin & bit and nb & ~s == 0:
                out[s] = val
        return out

    return _run_subset_dp(g, ntd, w, introduce, maximize=False, problem="wvc", needs_bag=True)


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _run_subset_dp(g, ntd, w, introduce, maximize, problem, needs_bag=False):
    """Shared driver for set problems whose state is the chosen part of the bag.

    Values are pairs (objective, tiebreak) stored sign-adjusted so that larger
    is always better.
    """
    n = g.n
    keybit = _bit_key(n)
    sign = 1 if maximize else -1
    tables = [None] * len(ntd)
    entries = 0
    for i, kind in enumerate(ntd.kinds):
        if kind == LEAF:
            table = {0: (0, 0)}
        elif kind == INTRODUCE:
            child = ntd.children[i][0]
            v = ntd.vertex[i]
            if needs_bag:
                table = introduce(v, tables[child], _mask(ntd.bags[child]))
            else:
                table = introduce(v, tables[child])
            tables[child] = None
        elif kind == FORGET:
            child = ntd.children[i][0]
            bit = 1 << ntd.vertex[i]
            table = {}
            for s, (val, key) in tables[child].items():
                if s & bit:
                    s ^= bit
                    val = val + sign * w[ntd.vertex[i]]
                    key = key + keybit[ntd.vertex[i]]
                cur = table.get(s)
                if cur is None or (val, key) > cur:
                    table[s] = (val, key)
            tables[child] = None
        else:
            a, b = ntd.children[i]
            ta, tb = tables[a], tables[b]
            table = {}
            for s, (va, ka) in ta.items():
                other = tb.get(s)
                if other is not None:
                    table[s] = (va + other[0], ka + other[1])
            tables[a] = tables[b] = None
        entries += len(table)
        tables[i] = table
    root = tables[ntd.root]
    if 0 not in root:
        raise InfeasibleError(f"{problem}: no feasible solution")
    val, key = root[0]
    return DpSolution(problem, sign * val, _set_from_key(n, key), _stats(ntd, entries))


# --------------------------------------------------------------------------
# dominating set

def solve_ds(g: Graph, ntd: NiceTreeDecomposition, targets: Iterable[int] | None = None) -> DpSolution:
    """Minimum S such that every target vertex is in S or adjacent to S.

    State per bag: (S, D) with S the chosen bag vertices and D the bag
    vertices outside S that are already dominated. Non-targets count as
    dominated from the moment they are introduced.
    """
    _check_ntd(g, ntd)
    n = g.n
    tmask = ((1 << n) - 1) if targets is None else _mask(targets)
    if targets is not None:
        for v in targets:
            if not 0 <= v < n:
                raise ValueError(f"target {v} not in graph")
    masks = g.masks
    keybit = _bit_key(n)
    tables = [None] * len(ntd)
    entries = 0

    def better(table, state, val):
        cur = table.get(state)
        if cur is None or val > cur:
            table[state] = val

    for i, kind in enumerate(ntd.kinds):
        if kind == LEAF:
            table = {(0, 0): (0, 0)}
        elif kind == INTRODUCE:
            child = ntd.children[i][0]
            v = ntd.vertex[i]
            bit = 1 << v
            bag_mask = _mask(ntd.bags[child])
            nb = masks[v] & bag_mask
            table = {}
            for (s, d), val in tables[child].items():
                # v in the set dominates its bag neighbours
                better(table, (s | bit, d | (nb & ~s)), val)
                dominated = (nb & s) or not (tmask & bit)
                better(table, (s, d | bit) if dominated else (s, d), val)
            tables[child] = None
        elif kind == FORGET:
            child = ntd.children[i][0]
            v = ntd.vertex[i]
            bit = 1 << v
            table = {}
            for (s, d), (val, key) in tables[child].items():
                if s & bit:
                    better(table, (s ^ bit, d), (val - 1, key + keybit[v]))
                elif d & bit:
                    better(table, (s, d ^ bit), (val, key))
            tables[child] = None
        else:
            a, b = ntd.children[i]
            by_s: dict[int, list] = {}
            for (s, d), val in tables[b].items():
                by_s.setdefault(s, []).append((d, val))
            table = {}
            for (s, d1), (va, ka) in tables[a].items():
                for d2, (vb, kb) in by_s.get(s, ()):
                    better(table, (s, d1 | d2), (va + vb, ka + kb))
            tables[a] = tables[b] = None
        entries += len(table)
        tables[i] = table
    val, key = tables[ntd.root][(0, 0)]
    return DpSolution("ds", -val, _set_from_key(n, key), _stats(ntd, entries))


# --------------------------------------------------------------------------
# max cut

def solve_maxcut(g: Graph, weights, ntd: NiceTreeDecomposition) -> DpSolution:
    """Maximum-weight cut; the certificate labels each vertex 0 or 1."""
    _check_ntd(g, ntd)
    n = g.n
    ew = edge_weights(g, weights)
    keybit = _bit_key(n)
    tables = [None] * len(ntd)
    entries = 0
    for i, kind in enumerate(ntd.kinds):
        if kind == LEAF:
            table = {0: (0, 0)}
        elif kind == INTRODUCE:
            child = ntd.children[i][0]
            bit = 1 << ntd.vertex[i]
            table = {}
            for s, val in tables[child].items():
                table[s] = val
                table[s | bit] = val
            tables[child] = None
        elif kind == FORGET:
            child = ntd.children[i][0]
            v = ntd.vertex[i]
            bit = 1 << v
            rest = [(u, ew[(min(u, v), max(u, v))]) for u in ntd.bags[i] if g.has_edge(u, v)]
            table = {}
            for s, (val, key) in tables[child].items():
                side = (s >> v) & 1
                gain = sum(wt for u, wt in rest if (s >> u) & 1 != side)
                t = s & ~bit
                cand = (val + gain, key + (keybit[v] if side else 0))
                cur = table.get(t)
                if cur is None or cand > cur:
                    table[t] = cand
            tables[child] = None
        else:
            a, b = ntd.children[i]
            tb = tables[b]
            table = {s: (va + tb[s][0], ka + tb[s][1]) for s, (va, ka) in tables[a].items()}
            tables[a] = tables[b] = None
        entries += len(table)
        tables[i] = table
    val, key = tables[ntd.root][0]
    side = set(_set_from_key(n, key))
    labels = tuple(1 if v in side else 0 for v in range(n))
    return DpSolution("maxcut", val, labels, _stats(ntd, entries))


# --------------------------------------------------------------------------
# colouring

def _q_coloring(g: Graph, ntd: NiceTreeDecomposition, q: int):
    """A proper q-colouring as a tuple, or None; also returns table entries.

    State: colours of the bag vertices in bag order. Each state keeps one
    witness as a persistent tree of forgotten (vertex, colour) pairs.
    """
    tables = [None] * len(ntd)
    entries = 0
    for i, kind in enumerate(ntd.kinds):
        bag = ntd.bags[i]
        if kind == LEAF:
            table = {(): None}
        elif kind == INTRODUCE:
            child = ntd.children[i][0]
            v = ntd.vertex[i]
            cbag = ntd.bags[child]
            pos = bag.index(v)
            nb_pos = [j for j, u in enumerate(cbag) if g.has_edge(u, v)]
            table = {}
            for state, wit in tables[child].items():
                used = {state[j] for j in nb_pos}
                for c in range(q):
                    if c not in used:
                        table[state[:pos] + (c,) + state[pos:]] = wit
            tables[child] = None
        elif kind == FORGET:
            child = ntd.children[i][0]
            v = ntd.vertex[i]
            pos = ntd.bags[child].index(v)
            table = {}
            for state, wit in tables[child].items():
                t = state[:pos] + state[pos + 1:]
                if t not in table:
                    table[t] = ((v, state[pos]), wit)
            tables[child] = None
        else:
            a, b = ntd.children[i]
            tb = tables[b]
            table = {s: ("join", wa, tb[s]) for s, wa in tables[a].items() if s in tb}
            tables[a] = tables[b] = None
        entries += len(table)
        tables[i] = table
        if not table:
            return None, entries
    root = tables[ntd.root]
    if () not in root:
        return None, entries
    colors = [0] * g.n
    stack = [root[()]]
    while stack:
        item = stack.pop()
        if item is None:
            continue
        if item[0] == "join":
            stack.extend(item[1:])
        else:
            (v, c), rest = item
            colors[v] = c
            stack.append(rest)
    return tuple(colors), entries


def chromatic_number(g: Graph, ntd: NiceTreeDecomposition) -> DpSolution:
    """Exact chromatic number by trying q = 1, 2, ... up to width + 1."""
    _check_ntd(g, ntd)
    if g.n == 0:
        return DpSolution("chromatic", 0, (), _stats(ntd, 0))
    entries = 0
    for q in range(1, ntd.width + 2):
        colors, used = _q_coloring(g, ntd, q)
        entries += used
        if colors is not None:
            return DpSolution("chromatic", q, colors, _stats(ntd, entries))
    raise AssertionError("no colouring within width + 1 colours; decomposition invalid?")
