"""Parameterized vertex cover: kernels, a bounded search tree, and the
guess-and-conquer dispatcher.

The dispatcher kernelizes, then either branches directly (when the reduced
parameter is at most ``beta * log2(n)``, so ``2 ** k'`` is polynomial in n)
or decomposes the kernel and runs the tree-decomposition DP. Both kernels
only delete vertices, so the reduced graph is an induced subgraph and hence
a minor of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .bipartite import max_bipartite_matching, min_cut_cover
from .dp import solve_wvc
from .graph import Graph, induced_subgraph
from .treedec import heuristic_decompose, make_nice

POLYNOMIAL, SUBEXPONENTIAL = "polynomial", "subexponential"


@dataclass(frozen=True)
class KernelResult:
    graph: Graph
    k_prime: int
    forced_in: tuple[int, ...]
    vmap: tuple[int, ...]  # kernel vertex -> original vertex
    rule_trace: tuple = ()


@dataclass(frozen=True)
class GncReport:
    regime: str
    kernel_vertices: int
    decomposition_width: int | None
    method: str  # "branch" | "treewidth-dp" | "kernel"
    predicted_exponent: float
    k_prime: int | None = None
    trace: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"regime": self.regime, "kernel_vertices": self.kernel_vertices,
                "decomposition_width": self.decomposition_width, "method": self.method,
                "predicted_exponent": self.predicted_exponent, "k_prime": self.k_prime}


def _check_k(k):
    if k < 0:
        raise ValueError("k must be non-negative")


def kernel_vc_buss(g: Graph, k: int) -> KernelResult | None:
    """High-degree and isolated-vertex rules; None for a no-instance."""
    _check_k(k)
    alive = set(range(g.n))
    deg = [g.degree(v) for v in range(g.n)]
    forced = []
    trace = []
    kp = k
    while True:
        high = [v for v in sorted(alive) if deg[v] > kp]
        if not high:
            break
        v = high[0]
        if kp == 0:
            trace.append(("no-instance", f"vertex {v} has degree {deg[v]} with budget 0"))
            return None
        forced.append(v)
        alive.discard(v)
        for u in g.adj[v]:
            deg[u] -= 1
        kp -= 1
        trace.append(("high-degree", v))
    isolated = [v for v in sorted(alive) if deg[v] == 0]
    alive.difference_update(isolated)
    if isolated:
        trace.append(("isolated", len(isolated)))
    sub, old = induced_subgraph(g, alive)
    if sub.m > kp * kp:
        trace.append(("no-instance", f"{sub.m} edges > {kp}^2"))
        return None
    return KernelResult(sub, kp, tuple(sorted(forced)), tuple(old), tuple(trace))


@lru_cache(maxsize=256)
def _lp_cover(g: Graph):
    """Half-integral LP optimum from a minimum cover of the double cover.

    Vertex v has copies v (left) and n + v (right); each edge uv becomes
    u - (n+v) and v - (n+u). Among minimum covers the lexicographically
    smallest one is taken, by charging copy p the weight
    ``2^(2n) - 2^(2n-1-p)``: cardinality dominates, then sets containing
    earlier copies win. Returns x_v * 2 per vertex.
    """
    n = g.n
    edges = [(u, n + v) for u, v in g.edges()] + [(v, n + u) for u, v in g.edges()]
    dc = Graph(2 * n, edges)
    sides = (range(n), range(n, 2 * n))
    big = 1 << (2 * n)
    w = [big - (1 << (2 * n - 1 - p)) for p in range(2 * n)]
    cover, _ = min_cut_cover(dc, *sides, w)
    # cardinality cross-check against a maximum matching of the double cover
    matching = len(max_bipartite_matching(dc, sides))
    if len(cover) != matching:
        raise AssertionError(f"double-cover cover {len(cover)} != matching {matching}")
    return tuple((v in cover) + (n + v in cover) for v in range(n))


def kernel_vc_nt(g: Graph, k: int) -> KernelResult | None:
    """LP-based kernel with at most 2k' vertices; None for a no-instance."""
    _check_k(k)
    x2 = _lp_cover(g)
    lp2 = sum(x2)
    if lp2 > 2 * k:
        return None
    ones = tuple(v for v in range(g.n) if x2[v] == 2)
    halves = [v for v in range(g.n) if x2[v] == 1]
    sub, old = induced_subgraph(g, halves)
    kp = k - len(ones)
    trace = (("lp", lp2 / 2), ("lp-one", len(ones)), ("lp-zero", g.n - len(ones) - len(halves)))
    return KernelResult(sub, kp, ones, tuple(old), trace)


def compose(outer: KernelResult, inner: KernelResult) -> KernelResult:
    """Kernel ``inner`` of ``outer.graph`` expressed against the original."""
    vm = outer.vmap
    forced = tuple(sorted(outer.forced_in + tuple(vm[v] for v in inner.forced_in)))
    return KernelResult(inner.graph, inner.k_prime, forced, tuple(vm[v] for v in inner.vmap),
                        outer.rule_trace + inner.rule_trace)


def branch_vc(g: Graph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Bounded search tree: branch on either end of an uncovered edge.

    The edge is taken at the highest-degree vertex (lowest id on ties) and
    its lowest neighbour; that vertex is tried first. A branch stops early
    when the remaining edges cannot be covered by k vertices of the current
    maximum degree.
    """
    _check_k(k)
    masks = g.masks

    def rec(removed, budget):
        best_v, best_d, m2 = -1, 0, 0
        for v in range(g.n):
            if not (removed >> v) & 1:
                d = bin(masks[v] & ~removed).count("1")
                m2 += d
                if d > best_d:
                    best_v, best_d = v, d
        if best_d == 0:
            return []
        if budget == 0 or m2 // 2 > budget * best_d:
            return None
        u = best_v
        low = masks[u] & ~removed
        v = (low & -low).bit_length() - 1
        for x in (u, v):
            sub = rec(removed | (1 << x), budget - 1)
            if sub is not None:
                return [x] + sub
        return None

    res = rec(0, k)
    if res is None:
        return False, None
    return True, tuple(sorted(res))


def _log2(n):
    return math.log2(n) if n > 1 else 0.0


def gnc_solve_vc(g: Graph, k: int, beta: float = 1.0, width_cap: int = 25,
                 kernels: tuple[str, ...] = ("buss", "nt")):
    """Decide whether g has a vertex cover of size at most k.

    Returns ``(decision, certificate or None, GncReport)``. ``kernels``
    selects which reductions run, in order.
    """
    _check_k(k)
    kr = KernelResult(g, k, (), tuple(range(g.n)))
    for name in kernels:
        step = {"buss": kernel_vc_buss, "nt": kernel_vc_nt}[name](kr.graph, kr.k_prime)
        if step is None:
            regime = POLYNOMIAL if kr.k_prime <= beta * _log2(g.n) else SUBEXPONENTIAL
            rep = GncReport(regime, kr.graph.n, None, "kernel", math.sqrt(kr.graph.n), None,
                            kr.rule_trace + ((name, "no-instance"),))
            return False, None, rep
        kr = compose(kr, step)

    kg, kp = kr.graph, kr.k_prime
    width = None
    if kp <= beta * _log2(g.n):
        regime, method = POLYNOMIAL, "branch"
        ok, cover = branch_vc(kg, kp)
    else:
        regime = SUBEXPONENTIAL
        td = heuristic_decompose(kg)
        width = td.width
        if width <= width_cap:
            method = "treewidth-dp"
            sol = solve_wvc(kg, None, make_nice(td))
            ok = sol.value <= kp
            cover = sol.certificate if ok else None
        else:
            method = "branch"
            ok, cover = branch_vc(kg, kp)
    rep = GncReport(regime, kg.n, width, method, math.sqrt(kg.n), kp, kr.rule_trace)
    if not ok:
        return False, None, rep
    cert = tuple(sorted(set(kr.forced_in) | {kr.vmap[v] for v in cover}))
    return True, cert, rep
