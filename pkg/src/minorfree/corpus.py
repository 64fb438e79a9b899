"""Deterministic instance corpus used by the tests and the benchmark."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import graph as G
from .bipartite import BIP, TW, PieceDecomposition
from .graph import Graph


# sizes of the random families; together with the fixed families this gives
# a little over 500 graphs with at most 16 vertices
SUBGRIDS, RANDOM_BIPARTITE, RANDOM_GRAPHS, COMPOSITES = 140, 135, 135, 80


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Graph
    tags: frozenset
    pieces: PieceDecomposition | None = None

    def __iter__(self):
        # allows ``for name, g in corpus(seed)``
        return iter((self.name, self.graph))


def _entry(name, g, *tags, pieces=None):
    tags = set(tags)
    if G.is_bipartite(g):
        tags.add("bipartite")
    return CorpusEntry(name, g, frozenset(tags), pieces)


def composite(bip: Graph, tw: Graph, shared: int, rng: random.Random, name: str) -> CorpusEntry:
    """Glue ``tw`` onto ``bip`` by identifying ``shared`` vertices.

    The first ``shared`` vertices of ``tw`` are identified with distinct
    random vertices of ``bip``; the rest of ``tw`` is appended.
    """
    anchors = rng.sample(range(bip.n), shared)
    ids = anchors + list(range(bip.n, bip.n + tw.n - shared))
    edges = list(bip.edges()) + [(ids[u], ids[v]) for u, v in tw.edges()]
    g = Graph.from_edges(bip.n + tw.n - shared, edges, simplify=True)
    pd = PieceDecomposition.build([(range(bip.n), BIP), (ids, TW)])
    return _entry(name, g, "composite", pieces=pd)


def corpus(seed: int = 1) -> list[CorpusEntry]:
    rng = random.Random(seed)
    out = []
    for r in range(2, 7):
        for c in range(r, 7):
            out.append(_entry(f"grid-{r}x{c}", G.grid(r, c), "planar", "grid"))
    for i in range(SUBGRIDS):
        r, c = rng.randint(3, 4), rng.randint(3, 5)
        p = rng.choice([0.6, 0.75, 0.9])
        out.append(_entry(f"subgrid-{r}x{c}-{i}", G.random_subgrid(r, c, p, rng.randrange(1 << 30)),
                          "planar", "subgrid"))
    for n in range(3, 11):
        out.append(_entry(f"cycle-{n}", G.cycle(n), "planar"))
    for n in range(2, 9):
        out.append(_entry(f"path-{n}", G.path(n), "planar", "tree"))
    for k in range(2, 9):
        out.append(_entry(f"star-{k}", G.star(k), "planar", "tree"))
    for n in range(1, 7):
        out.append(_entry(f"complete-{n}", G.complete(n), *(["planar"] if n <= 4 else [])))
    for a, b in [(2, 3), (3, 3), (3, 4), (2, 6)]:
        out.append(_entry(f"kbip-{a}x{b}", G.complete_bipartite(a, b), *(["planar"] if a <= 2 else [])))
    out.append(_entry("petersen", G.petersen()))
    out.append(_entry("empty-4", G.empty(4), "planar"))
    for i in range(RANDOM_BIPARTITE):
        a, b = rng.randint(2, 8), rng.randint(2, 8)
        p = rng.choice([0.3, 0.5, 0.7])
        out.append(_entry(f"bip-{a}x{b}-{i}", G.random_bipartite(a, b, p, rng.randrange(1 << 30))))
    for i in range(RANDOM_GRAPHS):
        n = rng.randint(6, 14)
        p = rng.choice([0.15, 0.25, 0.35])
        out.append(_entry(f"random-{n}-{i}", G.random_graph(n, p, rng.randrange(1 << 30))))
    for i in range(COMPOSITES):
        a, b = rng.randint(2, 5), rng.randint(2, 5)
        bip = G.random_bipartite(a, b, 0.6, rng.randrange(1 << 30))
        kind = i % 4
        if kind == 0:
            tw = G.cycle(rng.choice([3, 5, 7]))
        elif kind == 1:
            tw = G.complete(rng.randint(3, 5))
        elif kind == 2:
            tw = G.random_graph(rng.randint(4, 7), 0.5, rng.randrange(1 << 30))
        else:
            tw = G.random_subgrid(2, 3, 0.8, rng.randrange(1 << 30))
        shared = rng.randint(1, min(3, tw.n, bip.n))
        out.append(composite(bip, tw, shared, rng, f"composite-{i}"))
    return out
