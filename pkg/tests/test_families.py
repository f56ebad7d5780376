"""Family generators: regularity, sizes, labelings, and edge cases."""

import pytest

from cyclefactor.families import (
    CLASS_NAMES,
    complete_graph,
    complete_looped,
    complete_tripartite_222,
    crossing_gadget,
    cycle_graph,
    looped_bidirected_cycle,
    padded_gadget,
    three_block_splice,
    undirected_family,
)
from cyclefactor.graphs import disjoint_union, fingerprint, is_d_regular


def test_complete_looped_shape():
    g = complete_looped(4)
    assert g.n == 4 and g.num_arcs == 16 and g.loop_count == 4
    assert is_d_regular(g, 4)
    assert complete_looped(1).out == ((0,),)
    with pytest.raises(ValueError):
        complete_looped(0)


def test_looped_bidirected_cycle_shape():
    g = looped_bidirected_cycle(6)
    assert g.n == 6 and is_d_regular(g, 3) and g.loop_count == 6
    for v in range(6):
        assert set(g.out[v]) == {(v - 1) % 6, v, (v + 1) % 6}
    with pytest.raises(ValueError):
        looped_bidirected_cycle(3)


@pytest.mark.parametrize("d", range(3, 13))
def test_crossing_gadget_is_d_regular(d):
    g, lab = crossing_gadget(d)
    assert g.n == 2 * d
    assert is_d_regular(g, d)
    assert g.loop_count == 2 * d
    sizes = {name: lab.class_of.count(name) for name in CLASS_NAMES}
    assert sizes == {"A1": 1, "B1": 1, "C1": d - 2, "A2": 1, "B2": 1, "C2": d - 2}


@pytest.mark.parametrize("d", range(3, 9))
def test_crossing_arcs_are_the_only_half_cut(d):
    g, lab = crossing_gadget(d)
    h1, h2 = lab.half_1(), lab.half_2()
    assert h1 | h2 == frozenset(range(g.n)) and not h1 & h2
    cut = {
        (u, w)
        for u, w in g.arcs()
        if (u in h1) != (w in h1)
    }
    assert cut == set(lab.crossing_arcs.values())
    assert set(lab.crossing_arcs) == {"u1", "v1", "u2", "v2"}
    for u, w in lab.crossing_arcs.values():
        assert g.has_arc(u, w)


def test_degree_three_gadget_is_the_looped_six_cycle():
    g, _ = crossing_gadget(3)
    h = looped_bidirected_cycle(6)
    assert g.out == h.out
    assert fingerprint(g) == fingerprint(h)


def test_gadget_rejects_small_degree():
    with pytest.raises(ValueError):
        crossing_gadget(2)


def test_padded_gadget_is_gadget_plus_cliques():
    g = padded_gadget(4, 3)
    assert g.n == 12 and is_d_regular(g, 3)
    gadget, _ = crossing_gadget(3)
    expect = disjoint_union([gadget, complete_looped(3), complete_looped(3)])
    assert g.out == expect.out
    assert padded_gadget(2, 5).out == crossing_gadget(5)[0].out
    with pytest.raises(ValueError):
        padded_gadget(1, 3)
    with pytest.raises(ValueError):
        padded_gadget(3, 2)


def test_cycle_and_clique():
    c = cycle_graph(5)
    assert c.is_regular(2) and c.num_edges == 5
    k = complete_graph(5)
    assert k.is_regular(4) and k.num_edges == 10
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_octahedron():
    g = complete_tripartite_222()
    assert g.n == 6 and g.is_regular(4) and g.num_edges == 12
    # non-edges are exactly the three part pairs
    non = [(u, v) for u in range(6) for v in range(u + 1, 6) if not g.has_edge(u, v)]
    assert non == [(0, 1), (2, 3), (4, 5)]


def test_undirected_family_dispatch():
    assert undirected_family("cycle", 6) == cycle_graph(6)
    assert undirected_family("clique", 4) == complete_graph(4)
    assert undirected_family("k222") == complete_tripartite_222()
    two = undirected_family("clique", 3, copies=2)
    assert two.n == 6 and two.num_edges == 6
    with pytest.raises(ValueError):
        undirected_family("torus", 4)


def test_three_block_splice_stays_regular():
    for m in (4, 5, 6):
        g = three_block_splice(m)
        assert g.n == 3 * m
        assert g.is_regular(m - 1)
    with pytest.raises(ValueError):
        three_block_splice(3)
