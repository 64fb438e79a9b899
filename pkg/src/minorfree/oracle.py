"""Exhaustive reference solvers for small graphs.

Subset problems enumerate all 2^n vertex subsets at once as an integer
array and evaluate feasibility and objective with vectorised bit tests.
Chromatic number is found by backtracking with an increasing colour count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .graph import CapExceeded, Graph, edge_weights, vertex_weights

MAX_ORACLE_VERTICES = 20
PROBLEMS = ("is", "vc", "ds", "maxcut", "chromatic")


@dataclass(frozen=True)
class OracleResult:
    problem: str
    value: int
    certificate: tuple
    elapsed: float = field(default=0.0, compare=False)


def _subsets(n):
    return np.arange(1 << n, dtype=np.int64)


def _bit(s, v):
    return (s >> v) & 1


def _weight_of(s, n, w):
    total = np.zeros(s.shape, dtype=np.int64)
    for v in range(n):
        if w[v]:
            total += _bit(s, v) * np.int64(w[v])
    return total


def _lex_key(s, n):
    # larger key = lexicographically smaller sorted tuple among equal sizes
    key = np.zeros(s.shape, dtype=np.int64)
    for v in range(n):
        key |= _bit(s, v) << (n - 1 - v)
    return key


def _pick(feasible, value, s, n, maximize):
    if not feasible.any():
        return None
    vals = value[feasible]
    best = vals.max() if maximize else vals.min()
    cand = s[feasible][vals == best]
    chosen = cand[np.argmax(_lex_key(cand, n))]
    return int(best), tuple(v for v in range(n) if (int(chosen) >> v) & 1)


def _forced_ok(s, n, forced_in, forced_out):
    ok = np.ones(s.shape, dtype=bool)
    for v in forced_in:
        ok &= _bit(s, v) == 1
    for v in forced_out:
        ok &= _bit(s, v) == 0
    return ok


def _check_size(g):
    if g.n > MAX_ORACLE_VERTICES:
        raise CapExceeded(f"oracle limited to n <= {MAX_ORACLE_VERTICES}, got {g.n}")


def max_independent_set(g: Graph, weights=None, forced_in=(), forced_out=()):
    """(value, set) or None if the forcing is infeasible."""
    _check_size(g)
    n = g.n
    s = _subsets(n)
    ok = _forced_ok(s, n, forced_in, forced_out)
    for u, v in g.edges():
        ok &= (_bit(s, u) & _bit(s, v)) == 0
    return _pick(ok, _weight_of(s, n, vertex_weights(g, weights)), s, n, True)


def min_vertex_cover(g: Graph, weights=None, forced_in=(), forced_out=()):
    _check_size(g)
    n = g.n
    s = _subsets(n)
    ok = _forced_ok(s, n, forced_in, forced_out)
    for u, v in g.edges():
        ok &= (_bit(s, u) | _bit(s, v)) == 1
    return _pick(ok, _weight_of(s, n, vertex_weights(g, weights)), s, n, False)


def min_dominating_set(g: Graph, targets=None):
    _check_size(g)
    n = g.n
    s = _subsets(n)
    closed = [g.neighbor_mask(v) | (1 << v) for v in range(n)]
    dominated = np.zeros(s.shape, dtype=np.int64)
    for v in range(n):
        dominated |= np.where(_bit(s, v) == 1, np.int64(closed[v]), np.int64(0))
    want = sum(1 << v for v in (range(n) if targets is None else set(targets)))
    ok = (dominated & want) == want
    return _pick(ok, _weight_of(s, n, [1] * n), s, n, False)


def max_cut(g: Graph, weights=None):
    """(value, side labels); vertex 0 is kept on side 0."""
    _check_size(g)
    n = g.n
    if n == 0:
        return 0, ()
    ew = edge_weights(g, weights)
    s = _subsets(n - 1) << 1  # vertex 0 fixed to side 0
    value = np.zeros(s.shape, dtype=np.int64)
    for (u, v), wt in ew.items():
        value += (_bit(s, u) ^ _bit(s, v)) * np.int64(wt)
    i = int(np.argmax(value))
    best = int(s[i])
    return int(value[i]), tuple((best >> v) & 1 for v in range(n))


def clique_number(g: Graph) -> int:
    """Size of a largest clique (independent set of the complement)."""
    _check_size(g)
    n = g.n
    s = _subsets(n)
    ok = np.ones(s.shape, dtype=bool)
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                ok &= (_bit(s, u) & _bit(s, v)) == 0
    return int(_weight_of(s, n, [1] * n)[ok].max())


def chromatic_number(g: Graph):
    """(chi, colouring) by backtracking over q from the clique number up.

    Vertices are coloured in saturation order (most distinct neighbour
    colours first), and only one unused colour is ever tried.
    """
    _check_size(g)
    n = g.n
    if n == 0:
        return 0, ()
    for q in range(clique_number(g), n + 1):
        col = [-1] * n

        def place(done, used):
            if done == n:
                return True
            v = max((u for u in range(n) if col[u] < 0),
                    key=lambda u: (len({col[x] for x in g.adj[u] if col[x] >= 0}), g.degree(u), -u))
            taken = {col[u] for u in g.adj[v] if col[u] >= 0}
            for c in range(min(q, used + 1)):
                if c not in taken:
                    col[v] = c
                    if place(done + 1, max(used, c + 1)):
                        return True
            col[v] = -1
            return False

        if place(0, 0):
            return q, tuple(col)
    raise AssertionError("unreachable")


def oracle(problem: str, g: Graph, weights=None) -> OracleResult:
    """Exact optimum by exhaustive search (n <= 20)."""
    start = time.perf_counter()
    if problem == "is":
        value, cert = max_independent_set(g, weights)
    elif problem == "vc":
        value, cert = min_vertex_cover(g, weights)
    elif problem == "ds":
        value, cert = min_dominating_set(g)
    elif problem == "maxcut":
        value, cert = max_cut(g, weights)
    elif problem == "chromatic":
        value, cert = chromatic_number(g)
    else:
        raise ValueError(f"unknown problem {problem!r}; expected one of {PROBLEMS}")
    return OracleResult(problem, value, cert, time.perf_counter() - start)
