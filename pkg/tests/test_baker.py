import math

import pytest
from hypothesis import given, strategies as st

from minorfree import baker, graph as G, oracle as O
from minorfree.treedec import WidthCapExceeded, heuristic_decompose


def test_partition_examples():
    g = G.grid(5, 5)
    assert baker.baker_partition(g, 1).classes == (frozenset(range(25)),)
    assert [len(c) for c in baker.baker_partition(g, 3, [0]).classes] == [8, 9, 8]
    p4 = baker.baker_partition(G.path(4), 2, [0])
    assert p4.classes == (frozenset({0, 2}), frozenset({1, 3}))
    with pytest.raises(ValueError):
        baker.baker_partition(g, 0)


def test_ptas_is_examples():
    sol, rep = baker.ptas_is(G.grid(4, 4), None, 4)
    assert sol.value >= 6 and rep.guarantee == baker.Fraction(3, 4)
    assert baker.ptas_is(G.empty(5), [1, 2, 3, 4, 5], 3)[0].value == 15
    assert baker.ptas_is(G.cycle(4), None, 2)[0].value == 2
    with pytest.raises(ValueError):
        baker.ptas_is(G.cycle(4), None, 1)


def test_ptas_maxcut_examples():
    assert baker.ptas_maxcut(G.grid(3, 3), None, 4)[0].value >= 6
    assert baker.ptas_maxcut(G.complete(3), None, 3)[0].value >= 1
    assert baker.ptas_maxcut(G.complete(2), None, 3)[0].value == 1
    with pytest.raises(ValueError):
        baker.ptas_maxcut(G.complete(2), None, 2)


def test_ptas_domset_examples():
    assert baker.ptas_domset(G.star(5), 3)[0].value == 1
    assert baker.ptas_domset(G.path(4), 3)[0].value == 2
    assert baker.ptas_domset(G.empty(0), 3)[0].value == 0


def test_slabs_tile_levels():
    for top in range(0, 12):
        for t in (3, 4, 5):
            for shift in range(t):
                pieces = baker.slabs(top, t, shift)
                inner = [lvl for _, rng in pieces for lvl in rng]
                assert inner == list(range(top + 1))
                for slab, rng in pieces:
                    assert slab.start == max(rng.start - 1, 0)
                    assert slab.stop == min(rng.stop + 1, top + 1)


def test_slab_example():
    assert baker.slabs(6, 3, 1) == [(range(0, 2), range(0, 1)), (range(0, 5), range(1, 4)),
                                    (range(3, 7), range(4, 7))]


def test_two_part_examples():
    c4 = G.cycle(4)
    cols, rep = baker.two_part_color(c4, (frozenset({0, 2}), frozenset({1, 3})))
    assert rep.value == 2
    k4 = G.complete(4)
    cols, rep = baker.two_part_color(k4, ({0, 1}, {2, 3}))
    assert rep.value == 4
    pet = G.petersen()
    cols, rep = baker.two_part_color(pet, baker.decompose_two_parts(pet))
    assert rep.value <= 6 and all(cols[u] != cols[v] for u, v in pet.edges())
    with pytest.raises(ValueError):
        baker.two_part_color(c4, ({0, 1}, {1, 2, 3}))


def test_decompose_two_parts_examples():
    assert baker.decompose_two_parts(G.path(4), [0]) == (frozenset({0, 2}), frozenset({1, 3}))
    a, b = baker.decompose_two_parts(G.grid(4, 4), [0])
    for part in (a, b):
        sub, _ = G.induced_subgraph(G.grid(4, 4), part)
        assert heuristic_decompose(sub).width <= 2
    a, b = baker.decompose_two_parts(G.cycle(6), [0])
    # levels 0,1,1,2,2,3: even levels hold 1 + 2 vertices, odd levels 2 + 1
    assert (len(a), len(b)) == (3, 3)


def test_width_cap_names_the_shift():
    with pytest.raises(WidthCapExceeded, match="shift"):
        baker.ptas_is(G.grid(6, 6), None, 4, width_cap=1)
    with pytest.raises(WidthCapExceeded, match="part"):
        baker.two_part_color(G.complete(6), ({0, 1, 2}, {3, 4, 5}), width_cap=1)


@st.composite
def subgrids(draw):
    r, c = draw(st.integers(2, 4)), draw(st.integers(2, 4))
    return G.random_subgrid(r, c, draw(st.sampled_from([0.6, 0.8, 1.0])), draw(st.integers(0, 10 ** 6)))


@given(subgrids(), st.sampled_from([3, 4]))
def test_ptas_bounds(g, t):
    opt_is = O.max_independent_set(g)[0]
    assert baker.ptas_is(g, None, t)[0].value >= math.ceil(opt_is * (t - 1) / t)
    opt_mc = O.max_cut(g)[0]
    sol = baker.ptas_maxcut(g, None, t)[0]
    assert sol.value >= math.ceil(opt_mc * (t - 2) / t)
    assert baker.cut_value(g, sol.certificate) == sol.value
    opt_ds = O.min_dominating_set(g)[0]
    ds = baker.ptas_domset(g, t)[0]
    covered = set(ds.certificate).union(*(g.adj[v] for v in ds.certificate))
    assert covered == set(range(g.n))
    assert ds.value <= (opt_ds * (t + 2)) // t


@given(subgrids(), st.integers(1, 5))
def test_partition_respects_residues(g, t):
    part = baker.baker_partition(g, t)
    assert sorted(v for c in part.classes for v in c) == list(range(g.n))
    for v in range(g.n):
        assert v in part.classes[part.class_of(v)]
