import pytest
from hypothesis import given, strategies as st

from minorfree import dp, graph as G, oracle as O
from minorfree.treedec import TreeDecomposition, heuristic_decompose, make_nice
from strategies import forced_sets, graphs, weighted_graphs


def nice(g):
    return make_nice(heuristic_decompose(g))


def is_independent(g, s):
    s = set(s)
    return all(not (u in s and v in s) for u, v in g.edges())


def is_cover(g, s):
    s = set(s)
    return all(u in s or v in s for u, v in g.edges())


def test_wis_examples():
    p3 = G.path(3)
    assert dp.solve_wis(p3, [1, 5, 1], nice(p3)).certificate == (1,)
    assert dp.solve_wis(p3, [1, 5, 1], nice(p3)).value == 5
    assert dp.solve_wis(p3, [3, 5, 3], nice(p3)).certificate == (0, 2)
    c4 = G.cycle(4)
    # both {0, 2} and {1, 3} are optimal; the set with the smaller first vertex wins
    assert dp.solve_wis(c4, None, nice(c4)).certificate == (0, 2)


def test_wvc_examples():
    k4 = G.complete(4)
    sol = dp.solve_wvc(k4, None, nice(k4))
    assert (sol.value, sol.certificate) == (3, (0, 1, 2))
    star = G.star(4)
    assert dp.solve_wvc(star, None, nice(star)).certificate == (0,)


def test_ds_examples():
    assert dp.solve_ds(G.star(5), nice(G.star(5))).certificate == (0,)
    assert dp.solve_ds(G.cycle(6), nice(G.cycle(6))).value == 2
    e = G.empty(3)
    assert dp.solve_ds(e, nice(e)).value == 3
    p5 = G.path(5)
    # dominating only vertex 0 needs a single vertex next to it
    assert dp.solve_ds(p5, nice(p5), targets=[0]).certificate == (0,)


def test_maxcut_and_chromatic_examples():
    c5 = G.cycle(5)
    assert dp.solve_maxcut(c5, None, nice(c5)).value == 4
    k4 = G.complete(4)
    sol = dp.chromatic_number(k4, nice(k4))
    assert sol.value == 4 and sorted(sol.certificate) == [0, 1, 2, 3]
    assert dp.chromatic_number(G.grid(3, 3), nice(G.grid(3, 3))).value == 2
    assert dp.chromatic_number(G.empty(3), nice(G.empty(3))).value == 1
    assert dp.chromatic_number(G.empty(0), nice(G.empty(0))).value == 0


def test_forcing_examples():
    p3 = G.path(3)
    f = dp.ForcedSets(forced_in={0})
    assert dp.solve_wis(p3, [1, 5, 1], nice(p3), f).certificate == (0, 2)
    f = dp.ForcedSets(forced_out={1})
    assert dp.solve_wvc(p3, None, nice(p3), f).certificate == (0, 2)


def test_forcing_infeasible():
    p2 = G.path(2)
    with pytest.raises(dp.InfeasibleError):
        dp.solve_wis(p2, None, nice(p2), dp.ForcedSets(forced_in={0, 1}))
    with pytest.raises(dp.InfeasibleError):
        dp.solve_wvc(p2, None, nice(p2), dp.ForcedSets(forced_out={0, 1}))
    with pytest.raises(ValueError):
        dp.ForcedSets({0}, {0})
    with pytest.raises(ValueError):
        dp.solve_wis(p2, None, nice(p2), dp.ForcedSets({5}))


def test_decomposition_must_match_graph():
    with pytest.raises(ValueError):
        dp.solve_wis(G.path(4), None, nice(G.path(3)))


def test_invalid_decomposition_is_not_silently_used():
    bad = make_nice(TreeDecomposition.build([(0,), (1, 2)], [(0, 1)], 3))
    with pytest.raises(ValueError):
        dp.solve_wis(G.path(3), None, bad)


@given(weighted_graphs(max_n=11))
def test_wis_matches_oracle(gw):
    g, w = gw
    sol = dp.solve_wis(g, w, nice(g))
    ref = O.max_independent_set(g, w)
    assert sol.value == ref[0]
    assert sol.certificate == ref[1]
    assert is_independent(g, sol.certificate)
    assert sum(w[v] for v in sol.certificate) == sol.value


@given(weighted_graphs(max_n=11))
def test_wvc_matches_oracle_and_complements(gw):
    g, w = gw
    vc = dp.solve_wvc(g, w, nice(g))
    wis = dp.solve_wis(g, w, nice(g))
    assert (vc.value, vc.certificate) == O.min_vertex_cover(g, w)
    assert vc.value + wis.value == sum(w)
    assert is_cover(g, vc.certificate)


@given(st.data())
def test_forced_matches_oracle(data):
    g, w = data.draw(weighted_graphs(max_n=10))
    fin, fout = data.draw(forced_sets(g.n))
    f = dp.ForcedSets(fin, fout)
    for solver, ref in ((dp.solve_wis, O.max_independent_set), (dp.solve_wvc, O.min_vertex_cover)):
        expect = ref(g, w, fin, fout)
        if expect is None:
            with pytest.raises(dp.InfeasibleError):
                solver(g, w, nice(g), f)
        else:
            sol = solver(g, w, nice(g), f)
            assert (sol.value, sol.certificate) == expect
            assert fin <= set(sol.certificate) and not fout & set(sol.certificate)


@given(graphs(max_n=11))
def test_ds_matches_oracle(g):
    sol = dp.solve_ds(g, nice(g))
    assert (sol.value, sol.certificate) == O.min_dominating_set(g)
    s = set(sol.certificate)
    assert all(v in s or set(g.adj[v]) & s for v in range(g.n))


@given(graphs(max_n=11), st.data())
def test_ds_targets_match_oracle(g, data):
    targets = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    sol = dp.solve_ds(g, nice(g), targets)
    assert (sol.value, sol.certificate) == O.min_dominating_set(g, targets)


@given(graphs(max_n=11), st.data())
def test_maxcut_matches_oracle(g, data):
    ew = {e: data.draw(st.integers(0, 9)) for e in g.edges()}
    sol = dp.solve_maxcut(g, ew, nice(g))
    assert sol.value == O.max_cut(g, ew)[0]
    assert sum(wt for (u, v), wt in ew.items() if sol.certificate[u] != sol.certificate[v]) == sol.value


@given(graphs(max_n=9, max_density=0.35))
def test_chromatic_matches_oracle(g):
    sol = dp.chromatic_number(g, nice(g))
    assert sol.value == O.chromatic_number(g)[0]
    assert all(sol.certificate[u] != sol.certificate[v] for u, v in g.edges())
    assert len(set(sol.certificate)) == sol.value


@given(graphs(max_n=12))
def test_table_entries_bounded_by_width(g):
    ntd = nice(g)
    sol = dp.solve_wis(g, None, ntd)
    assert sol.stats["width"] == ntd.width
    assert sol.stats["table_entries"] <= len(ntd) * 2 ** (ntd.width + 1)


@pytest.mark.parametrize("g,w,expect", [
    (G.empty(1), [7], 7),
    (G.cycle(5), None, 2),
    (G.path(3), [1, 5, 1], 5),
])
def test_wis_values(g, w, expect):
    assert dp.solve_wis(g, w, nice(g)).value == expect


@pytest.mark.parametrize("g,expect", [(G.complete(2), 1), (G.star(4), 1), (G.path(4), 2)])
def test_wvc_values(g, expect):
    assert dp.solve_wvc(g, None, nice(g)).value == expect


def test_ds_values():
    assert dp.solve_ds(G.star(5), nice(G.star(5))).value == 1
    assert dp.solve_ds(G.path(4), nice(G.path(4))).value == 2
    assert dp.solve_ds(G.petersen(), nice(G.petersen()), targets=[]).value == 0


def test_maxcut_values():
    k23 = G.complete_bipartite(2, 3)
    assert dp.solve_maxcut(k23, None, nice(k23)).value == 6
    assert dp.solve_maxcut(G.complete(2), {(0, 1): 9}, nice(G.complete(2))).value == 9


@pytest.mark.parametrize("g,expect", [(G.cycle(6), 2), (G.cycle(5), 3), (G.complete(4), 4)])
def test_chromatic_values(g, expect):
    assert dp.chromatic_number(g, nice(g)).value == expect
