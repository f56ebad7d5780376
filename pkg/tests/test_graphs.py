"""Core graph containers, the text format, and the structural fingerprint."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclefactor.graphs import (
    DiGraph,
    UGraph,
    digraph_to_ugraph,
    disjoint_union,
    double_cover,
    fingerprint,
    from_text,
    is_d_regular,
    to_text,
    u_disjoint_union,
    ugraph_to_digraph,
)


def small_digraphs():
    # random adjacency as a strategy: n plus one out-set per vertex
    return st.integers(1, 7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.sets(st.integers(0, n - 1), max_size=n), min_size=n, max_size=n
            ),
        )
    )


def test_digraph_rejects_bad_rows():
    with pytest.raises(ValueError):
        DiGraph(2, [[0, 0], [1]])
    with pytest.raises(ValueError):
        DiGraph(2, [[2], [0]])
    with pytest.raises(ValueError):
        DiGraph(2, [[0]])
    with pytest.raises(ValueError):
        DiGraph(-1, [])


def test_digraph_basics():
    g = DiGraph(3, [[1, 0], [2], [0, 2]])
    assert g.out == ((0, 1), (2,), (0, 2))
    assert g.in_adj == ((0, 2), (0,), (1, 2))
    assert g.has_arc(0, 1) and not g.has_arc(1, 0)
    assert g.num_arcs == 5
    assert g.loop_count == 2
    assert g.out_degree(0) == 2 and g.in_degree(0) == 2
    assert list(g.arcs()) == [(0, 0), (0, 1), (1, 2), (2, 0), (2, 2)]


def test_regularity_and_union():
    a = DiGraph(2, [[0, 1], [0, 1]])
    assert is_d_regular(a, 2)
    u = disjoint_union([a, a, a])
    assert u.n == 6 and is_d_regular(u, 2)
    assert u.has_arc(4, 5) and not u.has_arc(0, 2)


def test_relabel_preserves_structure():
    g = DiGraph(3, [[1], [2], [0]])
    h = g.relabel([2, 0, 1])
    assert h.num_arcs == 3
    assert sorted(h.out_degree(v) for v in range(3)) == [1, 1, 1]
    assert h.has_arc(2, 0)


def test_ugraph_rejects_loops():
    with pytest.raises(ValueError):
        UGraph(2, [(0, 0)])


def test_ugraph_basics():
    g = UGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.is_regular(2)
    assert g.num_edges == 4
    assert g.has_edge(3, 0) and not g.has_edge(0, 2)
    uu = u_disjoint_union([g, g])
    assert uu.n == 8 and uu.num_edges == 8


def test_double_cover_shape():
    g = DiGraph(2, [[0, 1], [0, 1]])
    b = double_cover(g)
    assert b.n_left == b.n_right == 2
    assert b.is_regular(2)
    assert sorted(b.edges) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_text_round_trip_fixed():
    g = DiGraph(3, [[0, 1], [2], [0]])
    text = to_text(g, 2)
    g2, hint = from_text(text)
    assert g2 == g and hint == 2


def test_text_rejects_malformed():
    with pytest.raises(ValueError):
        from_text("2 1\n0: 1 1\n1: 0\n")
    with pytest.raises(ValueError):
        from_text("2 1\n1: 0\n0: 1\n")
    with pytest.raises(ValueError):
        from_text("1 1\n")


@settings(max_examples=60)
@given(small_digraphs())
def test_text_round_trip_random(data):
    n, rows = data
    g = DiGraph(n, [sorted(r) for r in rows])
    g2, hint = from_text(to_text(g))
    assert g2 == g and hint == -1


@settings(max_examples=40)
@given(small_digraphs(), st.randoms(use_true_random=False))
def test_fingerprint_relabel_invariant(data, rnd):
    n, rows = data
    g = DiGraph(n, [sorted(r) for r in rows])
    perm = list(range(n))
    rnd.shuffle(perm)
    assert fingerprint(g) == fingerprint(g.relabel(perm))


def test_fingerprint_separates_easy_cases():
    a = DiGraph(2, [[0, 1], [0, 1]])
    b = DiGraph(2, [[1], [0]])
    assert fingerprint(a) != fingerprint(b)


def test_undirected_encoding_round_trip():
    u = UGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    d = ugraph_to_digraph(u)
    assert d.num_arcs == 8
    assert digraph_to_ugraph(d) == u
    with pytest.raises(ValueError):
        digraph_to_ugraph(DiGraph(2, [[0], [0]]))
