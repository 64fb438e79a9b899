"""Benchmark suites: run solvers over the corpus and check them against the
exhaustive oracles and the declared guarantees.

Each suite returns a list of ``BenchRecord``; a record's ``ok`` flag says
whether its check held. Failures are recorded, never raised.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field

from . import baker, dp, gnc, oracle
from . import graph as G
from .bipartite import bip_weighted_vc, hybrid_solve, max_bipartite_matching
from .corpus import corpus
from .minors import has_odd_minor
from .treedec import heuristic_decompose, make_nice


@dataclass
class BenchRecord:
    instance: str
    algorithm: str
    params: dict
    value: int | None
    oracle: int | None
    width: int | None
    table_entries: int | None
    ok: bool
    wall_time: float = field(default=0.0, compare=False)

    def row(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d


def _timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def _small(seed, limit):
    return [e for e in corpus(seed) if e.graph.n <= limit]


def _rand_forced(rng, n):
    fin, fout = set(), set()
    for v in range(n):
        r = rng.random()
        if r < 0.1:
            fin.add(v)
        elif r < 0.2:
            fout.add(v)
    return dp.ForcedSets(fin, fout)


def suite_dp(seed: int) -> list[BenchRecord]:
    """Every DP engine against the oracle, with weights and forcing."""
    rng = random.Random(seed)
    out = []
    for e in _small(seed, 16):
        g = e.graph
        ntd = make_nice(heuristic_decompose(g))
        w = [rng.randint(0, 20) for _ in range(g.n)]
        ew = {ed: rng.randint(0, 20) for ed in g.edges()}
        forced = _rand_forced(rng, g.n)
        cases = [
            ("wis", {"weights": "unit"}, lambda: dp.solve_wis(g, None, ntd),
             lambda: oracle.max_independent_set(g)),
            ("wis", {"weights": "random", "forced": True}, lambda: dp.solve_wis(g, w, ntd, forced),
             lambda: oracle.max_independent_set(g, w, forced.forced_in, forced.forced_out)),
            ("wvc", {"weights": "unit"}, lambda: dp.solve_wvc(g, None, ntd),
             lambda: oracle.min_vertex_cover(g)),
            ("wvc", {"weights": "random", "forced": True}, lambda: dp.solve_wvc(g, w, ntd, forced),
             lambda: oracle.min_vertex_cover(g, w, forced.forced_in, forced.forced_out)),
            ("ds", {"targets": "all"}, lambda: dp.solve_ds(g, ntd), lambda: oracle.min_dominating_set(g)),
            ("maxcut", {"weights": "unit"}, lambda: dp.solve_maxcut(g, None, ntd), lambda: oracle.max_cut(g)),
            ("maxcut", {"weights": "random"}, lambda: dp.solve_maxcut(g, ew, ntd),
             lambda: oracle.max_cut(g, ew)),
            ("chromatic", {}, lambda: dp.chromatic_number(g, ntd), lambda: oracle.chromatic_number(g)),
        ]
        for name, params, run, ref in cases:
            start = time.perf_counter()
            try:
                sol = run()
                value, stats = sol.value, sol.stats
            except dp.InfeasibleError:
                value, stats = None, {}
            elapsed = time.perf_counter() - start
            expect = ref()
            expect = None if expect is None else expect[0]
            out.append(BenchRecord(e.name, name, params, value, expect, ntd.width,
                                   stats.get("table_entries"), value == expect, elapsed))
    return out


def suite_partition(seed: int) -> list[BenchRecord]:
    """Class soundness for all graphs; width after deletion on grids."""
    out = []
    for e in corpus(seed):
        g = e.graph
        for t in (2, 3, 4):
            part = baker.baker_partition(g, t)
            flat = sorted(v for c in part.classes for v in c)
            ok = flat == list(range(g.n))
            ok &= all(v in part.classes[part.levels.level[v] % t] for v in range(g.n))
            ok &= all(abs(part.levels.level[u] - part.levels.level[v]) <= 1 for u, v in g.edges())
            worst = None
            if e.tags & {"grid", "subgrid"}:
                for cls in part.classes:
                    sub, _ = G.delete_vertices(g, cls)
                    wd = heuristic_decompose(sub).width
                    worst = wd if worst is None else max(worst, wd)
                ok &= worst <= 3 * t - 1
            out.append(BenchRecord(e.name, "baker_partition", {"t": t}, len(part.classes),
                                   None, worst, None, bool(ok)))
    return out


def _dominates(g, cert):
    seen = set(cert)
    for v in cert:
        seen.update(g.adj[v])
    return len(seen) == g.n


def suite_ptas(seed: int) -> list[BenchRecord]:
    out = []
    for e in _small(seed, 16):
        g = e.graph
        opt_is = oracle.max_independent_set(g)[0]
        opt_mc = oracle.max_cut(g)[0]
        opt_ds = oracle.min_dominating_set(g)[0]
        for t in (3, 4):
            (sol, rep), el = _timed(baker.ptas_is, g, None, t)
            bound = math.ceil(opt_is * (t - 1) / t)
            ok = sol.value >= bound and sol.value == sum(1 for _ in sol.certificate)
            out.append(BenchRecord(e.name, "ptas_is", {"t": t}, sol.value, opt_is, max(rep.widths, default=None),
                                   None, ok, el))
            (sol, rep), el = _timed(baker.ptas_maxcut, g, None, t)
            bound = math.ceil(opt_mc * (t - 2) / t)
            ok = sol.value >= bound and baker.cut_value(g, sol.certificate) == sol.value
            out.append(BenchRecord(e.name, "ptas_maxcut", {"t": t}, sol.value, opt_mc,
                                   max(rep.widths, default=None), None, ok, el))
            (sol, rep), el = _timed(baker.ptas_domset, g, t)
            ok = _dominates(g, sol.certificate) and sol.value <= (opt_ds * (t + 2)) // t
            out.append(BenchRecord(e.name, "ptas_domset", {"t": t}, sol.value, opt_ds,
                                   max(rep.widths, default=None), None, ok, el))
    return out


def suite_coloring(seed: int) -> list[BenchRecord]:
    out = []
    for e in _small(seed, 14):
        g = e.graph
        chi = oracle.chromatic_number(g)[0]
        parts = baker.decompose_two_parts(g)
        (colors, rep), el = _timed(baker.two_part_color, g, parts)
        used = len(set(colors))
        ok = all(colors[u] != colors[v] for u, v in g.edges()) and used <= 2 * chi and used == rep.value
        out.append(BenchRecord(e.name, "two_part_color", {}, used, chi, max(rep.widths, default=None),
                               None, ok, el))
    return out


KERNEL_ROUTES = (("buss",), ("nt",), ("buss", "nt"))


def suite_gnc(seed: int) -> list[BenchRecord]:
    """Decision equivalence for every k, forcing each regime and kernel."""
    out = []
    for e in _small(seed, 16):
        g = e.graph
        vc = oracle.min_vertex_cover(g)[0]
        # kernel contracts
        kernel_ok = True
        for k in range(g.n + 1):
            kr = gnc.kernel_vc_nt(g, k)
            if kr is not None:
                kernel_ok &= kr.graph.n <= 2 * kr.k_prime
                kernel_ok &= _is_induced(g, kr)
            kb = gnc.kernel_vc_buss(g, k)
            if kb is not None:
                kernel_ok &= _is_induced(g, kb) and 0 <= kb.k_prime <= k
        out.append(BenchRecord(e.name, "kernels", {}, None, vc, None, None, bool(kernel_ok)))
        for route in KERNEL_ROUTES:
            for beta in (0, 1, 8):
                start = time.perf_counter()
                ok, yes, regimes = True, 0, set()
                for k in range(g.n + 1):
                    dec, cert, rep = gnc.gnc_solve_vc(g, k, beta=beta, kernels=route)
                    regimes.add(rep.regime)
                    ok &= dec == (vc <= k)
                    if dec:
                        yes += 1
                        ok &= len(cert) <= k and all(u in cert or v in cert for u, v in g.edges())
                params = {"kernels": "+".join(route), "beta": beta, "regimes": sorted(regimes)}
                out.append(BenchRecord(e.name, "gnc_solve_vc", params, yes, g.n + 1 - vc, None, None,
                                       bool(ok), time.perf_counter() - start))
    return out


def _is_induced(g, kr):
    sub = kr.graph
    vm = kr.vmap
    if len(set(vm)) != len(vm) or set(vm) & set(kr.forced_in):
        return False
    want = {(a, b) for a in range(sub.n) for b in range(a + 1, sub.n) if g.has_edge(vm[a], vm[b])}
    return want == set(sub.edges())


def suite_width(seed: int) -> list[BenchRecord]:
    """Heuristic width of NT kernels of grid instances against 4 sqrt(kernel)."""
    rng = random.Random(seed)
    graphs = [(f"grid-{r}x{c}", G.grid(r, c)) for r, c in [(4, 4), (5, 5), (6, 6), (6, 8), (8, 8), (7, 10), (10, 10)]]
    graphs += [(f"subgrid-8x8-{i}", G.random_subgrid(8, 8, 0.8, rng.randrange(1 << 30))) for i in range(4)]
    out = []
    for name, g in graphs:
        for k in range(0, 51):
            kr, el = _timed(gnc.kernel_vc_nt, g, k)
            if kr is None or kr.graph.n == 0:
                continue
            width = heuristic_decompose(kr.graph).width
            c = width / math.sqrt(kr.graph.n)
            out.append(BenchRecord(name, "nt_kernel_width", {"k": k, "c": round(c, 4)}, kr.graph.n, None,
                                   width, None, width <= 4 * math.sqrt(kr.graph.n), el))
    return out


def suite_hybrid(seed: int) -> list[BenchRecord]:
    """Koenig equality, weighted bipartite cover and the piece solver."""
    rng = random.Random(seed)
    out = []
    for i in range(200):
        a, b = rng.randint(1, 8), rng.randint(1, 8)
        g = G.random_bipartite(a, b, rng.choice([0.2, 0.4, 0.6]), rng.randrange(1 << 30))
        sides = (range(a), range(a, a + b))
        m = len(max_bipartite_matching(g, sides))
        sol = bip_weighted_vc(g, sides)
        out.append(BenchRecord(f"koenig-{i}", "bip_weighted_vc", {"a": a, "b": b}, sol.value, m, None, None,
                               sol.value == m and sol.stats["flow"] == sol.stats["cut"]))
    for e in _small(seed, 16):
        g = e.graph
        if "bipartite" not in e.tags or "composite" in e.tags:
            continue
        col = G.two_coloring(g).coloring
        sides = ([v for v in range(g.n) if col[v] == 0], [v for v in range(g.n) if col[v] == 1])
        w = [rng.randint(0, 20) for _ in range(g.n)]
        forced = _rand_forced(rng, g.n)
        expect = oracle.min_vertex_cover(g, w, forced.forced_in, forced.forced_out)
        try:
            sol = bip_weighted_vc(g, sides, w, forced)
            value = sol.value
        except dp.InfeasibleError:
            value = None
        expect = None if expect is None else expect[0]
        out.append(BenchRecord(e.name, "bip_weighted_vc", {"weights": "random", "forced": True}, value, expect,
                               None, None, value == expect))
    for e in _small(seed, 16):
        if e.pieces is None:
            continue
        g = e.graph
        w = [rng.randint(0, 20) for _ in range(g.n)]
        for problem, ref in (("vc", oracle.min_vertex_cover), ("is", oracle.max_independent_set)):
            for wname, weights in (("unit", None), ("random", w)):
                sol, el = _timed(hybrid_solve, g, e.pieces, problem, weights)
                expect = ref(g, weights)[0]
                cert = set(sol.certificate)
                wts = G.vertex_weights(g, weights)
                ok = sol.value == expect and sum(wts[v] for v in cert) == sol.value
                if problem == "vc":
                    ok &= all(u in cert or v in cert for u, v in g.edges())
                else:
                    ok &= not any(u in cert and v in cert for u, v in g.edges())
                out.append(BenchRecord(e.name, f"hybrid_{problem}", {"weights": wname,
                                       "boundary": len(e.pieces.boundary)}, sol.value, expect, None, None, ok, el))
    return out


def suite_oddminor(seed: int) -> list[BenchRecord]:
    k3 = G.complete(3)
    out = []
    for e in _small(seed, 12):
        g = e.graph
        got, el = _timed(has_odd_minor, g, k3)
        expect = not G.is_bipartite(g)
        out.append(BenchRecord(e.name, "has_odd_minor_k3", {}, int(got), int(expect), None, None,
                               got == expect, el))
    return out


SUITES = {
    "dp": suite_dp,
    "partition": suite_partition,
    "ptas": suite_ptas,
    "coloring": suite_coloring,
    "gnc": suite_gnc,
    "width": suite_width,
    "hybrid": suite_hybrid,
    "oddminor": suite_oddminor,
}


def bench_run(suite: str, seed: int = 1) -> list[BenchRecord]:
    try:
        fn = SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)}") from None
    return fn(seed)
