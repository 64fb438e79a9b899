import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from minorfree import graph as G, oracle as O
from minorfree.bipartite import (BIP, TW, BoundaryCapExceeded, FlowNetwork, PieceDecomposition, bip_weighted_is,
                                 bip_weighted_vc, check_sides, hybrid_solve, max_bipartite_matching,
                                 validate_pieces)
from minorfree.corpus import corpus
from minorfree.dp import ForcedSets, InfeasibleError
from strategies import forced_sets


@st.composite
def bipartite_graphs(draw, max_side=6, max_w=12):
    a = draw(st.integers(0, max_side))
    b = draw(st.integers(0, max_side))
    edges = [(u, a + v) for u in range(a) for v in range(b) if draw(st.booleans())]
    g = G.Graph(a + b, edges)
    w = draw(st.lists(st.integers(0, max_w), min_size=g.n, max_size=g.n))
    return g, (range(a), range(a, a + b)), w


def test_flow_example():
    net = FlowNetwork(4)
    for u, v, c in [(0, 1, 3), (0, 2, 2), (1, 2, 1), (1, 3, 2), (2, 3, 3)]:
        net.add_arc(u, v, c)
    assert net.max_flow(0, 3) == 5
    assert net.flow_value == net.cut_value == 5
    with pytest.raises(ValueError):
        net.add_arc(0, 1, -1)


@given(st.integers(2, 8), st.data())
def test_flow_matches_scipy(n, data):
    cap = np.zeros((n, n), dtype=np.int32)
    net = FlowNetwork(n)
    for u in range(n):
        for v in range(n):
            if u != v and data.draw(st.booleans()):
                c = data.draw(st.integers(0, 20))
                cap[u, v] += c
                net.add_arc(u, v, c)
    expect = maximum_flow(csr_matrix(cap), 0, n - 1).flow_value
    assert net.max_flow(0, n - 1) == expect


def test_vc_examples():
    k33 = G.complete_bipartite(3, 3)
    sides = (range(3), range(3, 6))
    sol = bip_weighted_vc(k33, sides, [1, 1, 1, 5, 5, 5])
    assert (sol.value, sol.certificate) == (3, (0, 1, 2))
    assert sol.stats["flow"] == sol.stats["cut"] == 3
    sol = bip_weighted_is(k33, sides, [1, 1, 1, 5, 5, 5])
    assert (sol.value, sol.certificate) == (15, (3, 4, 5))


def test_forced_out_pushes_neighbours_in():
    p3 = G.path(3)
    sol = bip_weighted_vc(p3, ([0, 2], [1]), None, ForcedSets(forced_out={1}))
    assert sol.certificate == (0, 2)
    with pytest.raises(InfeasibleError):
        bip_weighted_vc(p3, ([0, 2], [1]), None, ForcedSets(forced_out={0, 1}))
    with pytest.raises(InfeasibleError):
        bip_weighted_is(p3, ([0, 2], [1]), None, ForcedSets(forced_in={0, 1}))


def test_bad_sides():
    with pytest.raises(ValueError, match="cross"):
        check_sides(G.path(3), ([0, 1], [2]))
    with pytest.raises(ValueError):
        check_sides(G.path(3), ([0], [1]))
    with pytest.raises(ValueError):
        check_sides(G.path(3), ([0, 1], [1, 2]))


@given(bipartite_graphs())
def test_konig(gsw):
    g, sides, _ = gsw
    matching = max_bipartite_matching(g, sides)
    assert len({v for e in matching for v in e}) == 2 * len(matching)
    assert bip_weighted_vc(g, sides).value == len(matching)


@given(bipartite_graphs(), st.data())
def test_flow_solvers_match_oracle(gsw, data):
    g, sides, w = gsw
    fin, fout = data.draw(forced_sets(g.n))
    for solver, ref, f in ((bip_weighted_vc, O.min_vertex_cover, ForcedSets(fin, fout)),
                           (bip_weighted_is, O.max_independent_set, ForcedSets(fin, fout))):
        expect = ref(g, w, f.forced_in, f.forced_out)
        if expect is None:
            with pytest.raises(InfeasibleError):
                solver(g, sides, w, f)
            continue
        sol = solver(g, sides, w, f)
        assert sol.value == expect[0]
        assert f.forced_in <= set(sol.certificate)
        assert not f.forced_out & set(sol.certificate)
        assert sum(w[v] for v in sol.certificate) == sol.value


def two_triangles_and_square():
    # triangle 0-1-2, shared vertex 2, square 2-3-4-5
    g = G.Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (2, 5)])
    pd = PieceDecomposition.build([({0, 1, 2}, TW), ({2, 3, 4, 5}, BIP)])
    return g, pd


def test_hybrid_example():
    g, pd = two_triangles_and_square()
    assert pd.boundary == {2}
    assert validate_pieces(g, pd) == []
    vc = hybrid_solve(g, pd, "vc")
    assert vc.value == O.min_vertex_cover(g)[0] == 3
    is_ = hybrid_solve(g, pd, "is")
    assert is_.value == O.max_independent_set(g)[0] == 3
    assert vc.value + is_.value == g.n


def test_hybrid_rejects_bad_pieces():
    g, _ = two_triangles_and_square()
    h = G.Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    odd = PieceDecomposition.build([({0, 1, 2, 3}, BIP), ({3, 4}, TW)])
    with pytest.raises(ValueError, match="bipartite"):
        hybrid_solve(h, odd, "vc")
    missing = PieceDecomposition.build([({0, 1, 2}, TW), ({3, 4, 5}, BIP)])
    with pytest.raises(ValueError):
        hybrid_solve(g, missing, "vc")
    with pytest.raises(ValueError):
        hybrid_solve(g, odd, "ds")


def test_boundary_cap():
    g = G.empty(25)
    pd = PieceDecomposition.build([(set(range(25)), TW)], boundary=range(21))
    with pytest.raises(BoundaryCapExceeded):
        hybrid_solve(g, pd, "vc")


def test_piece_json_round_trip():
    _, pd = two_triangles_and_square()
    assert PieceDecomposition.from_json(pd.to_json()) == pd


def test_hybrid_on_corpus_composites():
    seen = 0
    for e in corpus(1):
        if e.pieces is None or e.graph.n > 18:
            continue
        seen += 1
        w = [(3 * v) % 7 + 1 for v in range(e.graph.n)]
        assert hybrid_solve(e.graph, e.pieces, "vc", w).value == O.min_vertex_cover(e.graph, w)[0], e.name
        assert hybrid_solve(e.graph, e.pieces, "is", w).value == O.max_independent_set(e.graph, w)[0], e.name
    assert seen >= 10


def checkerboard(g, cols):
    return ([v for v in range(g.n) if (v // cols + v % cols) % 2 == 0],
            [v for v in range(g.n) if (v // cols + v % cols) % 2 == 1])


def test_matching_sizes():
    assert len(max_bipartite_matching(G.cycle(4), ([0, 2], [1, 3]))) == 2
    assert len(max_bipartite_matching(G.star(4), ([0], [1, 2, 3, 4]))) == 1
    g = G.grid(3, 3)
    assert len(max_bipartite_matching(g, checkerboard(g, 3))) == 4


def test_small_cover_and_set_values():
    assert bip_weighted_vc(G.complete(2), ([0], [1])).value == 1
    sol = bip_weighted_vc(G.path(3), ([0, 2], [1]), [1, 5, 1])
    assert (sol.value, sol.certificate) == (2, (0, 2))
    assert bip_weighted_vc(G.cycle(4), ([0, 2], [1, 3])).value == 2
    assert bip_weighted_is(G.complete(2), ([0], [1]), [3, 4]).value == 4
    assert bip_weighted_is(G.cycle(4), ([0, 2], [1, 3])).value == 2
    assert bip_weighted_is(G.empty(3), ([0, 1, 2], []), [1, 2, 3]).value == 6


def test_hybrid_two_triangles():
    g = G.Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    pd = PieceDecomposition.build([({0, 1, 2}, TW), ({2, 3, 4}, TW)])
    assert pd.boundary == {2}
    assert hybrid_solve(g, pd, "vc").value == 3


def test_hybrid_square_and_triangle():
    g = G.Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (3, 5), (4, 5)])
    pd = PieceDecomposition.build([({0, 1, 2, 3}, BIP), ({3, 4, 5}, TW)])
    for problem, ref in (("vc", O.min_vertex_cover), ("is", O.max_independent_set)):
        assert hybrid_solve(g, pd, problem).value == ref(g)[0]


def test_hybrid_single_bipartite_piece():
    g = G.grid(3, 3)
    w = [v + 1 for v in range(9)]
    pd = PieceDecomposition.build([(range(9), BIP)])
    assert pd.boundary == set()
    assert hybrid_solve(g, pd, "vc", w).value == bip_weighted_vc(g, checkerboard(g, 3), w).value
