"""Exhaustive enumeration engine vs independent brute-force oracles."""

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclefactor.enumeration import (
    ArcConstraints,
    classify_crossing_patterns,
    cycle_factor_stats,
    cycle_matching_counts,
    expected_cycles,
    gn_classification_check,
    iter_cycle_factors,
    permutation_cycles,
    ryser_permanent,
    two_factor_stats,
)
from cyclefactor.errors import NoCycleFactorError
from cyclefactor.exact import crossing_pattern_table, harmonic
from cyclefactor.families import (
    complete_graph,
    complete_looped,
    complete_tripartite_222,
    crossing_gadget,
    cycle_graph,
    looped_bidirected_cycle,
)
from cyclefactor.graphs import DiGraph, UGraph, disjoint_union, double_cover


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------


def brute_stats(g, required=(), forbidden=()):
    """Filtered itertools.permutations oracle for every FactorStats field."""
    req = dict(required)
    bad = set(forbidden)
    count = 0
    cycle_sum = 0
    fix_sum = 0
    hist = {}
    usage = {}
    for p in permutations(range(g.n)):
        if not all(g.has_arc(v, p[v]) for v in range(g.n)):
            continue
        if any(p[t] != h for t, h in req.items()):
            continue
        if any((v, p[v]) in bad for v in range(g.n)):
            continue
        c = permutation_cycles(p)
        count += 1
        cycle_sum += c
        fix_sum += sum(p[v] == v for v in range(g.n))
        hist[c] = hist.get(c, 0) + 1
        for v in range(g.n):
            usage[v, p[v]] = usage.get((v, p[v]), 0) + 1
    return count, cycle_sum, fix_sum, hist, usage


def brute_permanent(rows):
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= rows[i][p[i]]
        total += prod
    return total


def brute_partition_stats(g, allow_edges):
    """Vertex partitions into cycles (>=3) and, optionally, matched edges.

    Every component contributes one unit to the cycle count, a matched
    edge included.  Enumerates edge subsets with all degrees in {1, 2}.
    """
    edges = g.edges()
    count = 0
    cycle_sum = 0
    hist = {}
    for k in range(len(edges) + 1):
        for sub in combinations(edges, k):
            deg = [0] * g.n
            for u, v in sub:
                deg[u] += 1
                deg[v] += 1
            if any(x == 0 or x > 2 for x in deg):
                continue
            # components of the chosen subgraph
            adj = [[] for _ in range(g.n)]
            for u, v in sub:
                adj[u].append(v)
                adj[v].append(u)
            seen = [False] * g.n
            units = 0
            ok = True
            for v0 in range(g.n):
                if seen[v0]:
                    continue
                stack = [v0]
                seen[v0] = True
                verts = []
                while stack:
                    x = stack.pop()
                    verts.append(x)
                    for y in adj[x]:
                        if not seen[y]:
                            seen[y] = True
                            stack.append(y)
                nedges = sum(deg[x] for x in verts) // 2
                if nedges == len(verts) and len(verts) >= 3:
                    units += 1  # a cycle
                elif allow_edges and len(verts) == 2 and nedges == 1:
                    units += 1  # a matched edge
                else:
                    ok = False
                    break
            if ok:
                count += 1
                cycle_sum += units
                hist[units] = hist.get(units, 0) + 1
    return count, cycle_sum, hist


def small_digraphs():
    return st.integers(1, 6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.sets(st.integers(0, n - 1), max_size=n), min_size=n, max_size=n
            ),
        )
    )


def check_against_brute(g, constraints=None):
    req = constraints.required if constraints else ()
    bad = constraints.forbidden if constraints else ()
    count, cycle_sum, fix_sum, hist, usage = brute_stats(g, req, bad)
    stats = cycle_factor_stats(g, constraints, want_edge_usage=True)
    assert stats.count == count
    assert stats.cycle_sum == cycle_sum
    assert stats.fix_sum == fix_sum
    assert stats.histogram == hist
    assert (stats.edge_usage or {}) == usage


# ---------------------------------------------------------------------------
# stats on fixed graphs
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m", range(1, 7))
def test_looped_clique_mean_is_harmonic(m):
    g = complete_looped(m)
    stats = cycle_factor_stats(g)
    assert stats.count == factorial(m)
    assert stats.mean() == harmonic(m)
    assert expected_cycles(g) == harmonic(m)


def test_looped_six_cycle_profile():
    stats = cycle_factor_stats(looped_bidirected_cycle(6), want_edge_usage=True)
    assert stats.count == 20
    assert stats.cycle_sum == 80
    assert stats.histogram == {1: 2, 3: 2, 4: 9, 5: 6, 6: 1}
    assert stats.mean() == Fraction(4)
    # every arc of a 2-in 2-out... here 3-regular graph: usage varies, but
    # row sums must equal the factor count
    for v in range(6):
        assert sum(stats.edge_usage.get((v, w), 0) for w in range(6)) == 20


def test_small_looped_clique_pinned_counts():
    s3 = cycle_factor_stats(complete_looped(3))
    assert (s3.count, s3.cycle_sum) == (6, 11)
    s4 = cycle_factor_stats(
        complete_looped(4),
        ArcConstraints(required=frozenset({(0, 1), (1, 0)})),
    )
    assert (s4.count, s4.cycle_sum) == (2, 5)


def test_empty_and_tiny_graphs():
    s = cycle_factor_stats(DiGraph(0, []))
    assert (s.count, s.cycle_sum, s.histogram) == (1, 0, {0: 1})
    loop = cycle_factor_stats(DiGraph(1, [[0]]))
    assert (loop.count, loop.cycle_sum, loop.fix_sum) == (1, 1, 1)
    bare = cycle_factor_stats(DiGraph(1, [[]]))
    assert bare.count == 0
    with pytest.raises(NoCycleFactorError):
        bare.mean()
    with pytest.raises(NoCycleFactorError):
        expected_cycles(DiGraph(2, [[0], [0]]))


def test_order_cap_is_enforced():
    with pytest.raises(ValueError):
        cycle_factor_stats(complete_looped(5), max_vertices=4)


# ---------------------------------------------------------------------------
# randomized equivalence with the permutation oracle
# ---------------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(small_digraphs())
def test_stats_match_brute_force(data):
    n, rows = data
    check_against_brute(DiGraph(n, [sorted(r) for r in rows]))


@settings(max_examples=60, deadline=None)
@given(small_digraphs(), st.data())
def test_constrained_stats_match_brute_force(data, picks):
    n, rows = data
    g = DiGraph(n, [sorted(r) for r in rows])
    arcs = [(u, w) for u in range(n) for w in range(n)]
    req_tails = picks.draw(st.sets(st.integers(0, n - 1), max_size=2))
    req_heads = picks.draw(st.permutations(list(range(n))))
    required = {(t, req_heads[i]) for i, t in enumerate(sorted(req_tails))}
    forbidden = picks.draw(
        st.sets(st.sampled_from(arcs), max_size=3).map(
            lambda s: frozenset(s) - required
        )
    )
    constraints = ArcConstraints(frozenset(required), forbidden)
    check_against_brute(g, constraints)


@settings(max_examples=60, deadline=None)
@given(small_digraphs())
def test_count_equals_permanent_of_double_cover(data):
    n, rows = data
    g = DiGraph(n, [sorted(r) for r in rows])
    mat = double_cover(g).biadjacency_rows()
    assert cycle_factor_stats(g).count == ryser_permanent(mat)


@settings(max_examples=40, deadline=None)
@given(small_digraphs())
def test_iterate_agrees_with_stats(data):
    n, rows = data
    g = DiGraph(n, [sorted(r) for r in rows])
    sigmas = list(iter_cycle_factors(g))
    assert len(set(sigmas)) == len(sigmas)
    stats = cycle_factor_stats(g)
    assert len(sigmas) == stats.count
    assert sum(permutation_cycles(s) for s in sigmas) == stats.cycle_sum
    for s in sigmas:
        assert sorted(s) == list(range(n))
        assert all(g.has_arc(v, s[v]) for v in range(n))


def test_constraint_validation():
    with pytest.raises(ValueError):
        ArcConstraints(required=frozenset({(0, 1), (0, 2)}))
    with pytest.raises(ValueError):
        ArcConstraints(required=frozenset({(1, 2), (0, 2)}))
    with pytest.raises(ValueError):
        ArcConstraints(required=frozenset({(0, 1)}), forbidden=frozenset({(0, 1)}))
    # a required arc missing from the graph zeroes the count, no error
    s = cycle_factor_stats(
        looped_bidirected_cycle(4), ArcConstraints(required=frozenset({(0, 2)}))
    )
    assert s.count == 0


def test_thread_split_is_deterministic():
    g = looped_bidirected_cycle(6)
    a = cycle_factor_stats(g, want_edge_usage=True, threads=1)
    b = cycle_factor_stats(g, want_edge_usage=True, threads=4)
    assert a == b
    big = complete_looped(6)
    assert cycle_factor_stats(big, threads=3) == cycle_factor_stats(big, threads=1)


def test_thread_env_override(monkeypatch):
    monkeypatch.setenv("CYCLEFACTOR_THREADS", "4")
    g = complete_looped(5)
    assert cycle_factor_stats(g) == cycle_factor_stats(g, threads=1)
    monkeypatch.setenv("CYCLEFACTOR_THREADS", "not-a-number")
    assert cycle_factor_stats(g).count == 120


# ---------------------------------------------------------------------------
# crossing-pattern classification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d", (3, 4, 5))
def test_classified_buckets_match_closed_table(d):
    got = classify_crossing_patterns(d)
    want = crossing_pattern_table(d)
    assert [(r.patterns, r.count, r.mean) for r in got] == [
        (r.patterns, r.count, r.mean) for r in want
    ]


def test_classifier_guards():
    with pytest.raises(ValueError):
        classify_crossing_patterns(2)
    with pytest.raises(ValueError):
        classify_crossing_patterns(8)


def test_classifier_row_totals_match_plain_enumeration():
    g, _ = crossing_gadget(4)
    stats = cycle_factor_stats(g)
    rows = classify_crossing_patterns(4)
    assert sum(r.count for r in rows) == stats.count
    assert sum((r.count * r.mean for r in rows), Fraction(0)) == stats.cycle_sum


# ---------------------------------------------------------------------------
# looped bidirected cycles
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(4, 11))
def test_cycle_factor_inventory_of_looped_cycles(n):
    assert gn_classification_check(n)


def test_inventory_guard():
    with pytest.raises(ValueError):
        gn_classification_check(3)
    with pytest.raises(ValueError):
        gn_classification_check(17)


def brute_cycle_matchings(n):
    """Matchings of the plain n-cycle graph, bucketed by size."""
    edges = [(v, (v + 1) % n) for v in range(n)]
    out = {}
    for k in range(n + 1):
        for sub in combinations(edges, k):
            used = [v for e in sub for v in e]
            if len(set(used)) == len(used):
                out[k] = out.get(k, 0) + 1
    return [out.get(k, 0) for k in range(max(out) + 1)]


@pytest.mark.parametrize("n", range(3, 11))
def test_cycle_matching_counts_match_brute(n):
    assert cycle_matching_counts(n) == brute_cycle_matchings(n)


def test_cycle_matching_known_rows():
    assert cycle_matching_counts(3) == [1, 3]
    assert cycle_matching_counts(6) == [1, 6, 9, 2]
    assert cycle_matching_counts(8) == [1, 8, 20, 16, 2]
    with pytest.raises(ValueError):
        cycle_matching_counts(2)


# ---------------------------------------------------------------------------
# undirected partitions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "g",
    [
        cycle_graph(6),
        complete_graph(4),
        complete_graph(5),
        complete_tripartite_222(),
        UGraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
    ],
    ids=["C6", "K4", "K5", "K222", "bowtie"],
)
@pytest.mark.parametrize("allow", (False, True), ids=["strict", "permissive"])
def test_partition_stats_match_brute(g, allow):
    count, cycle_sum, hist = brute_partition_stats(g, allow)
    stats = two_factor_stats(g, allow_edge_as_2cycle=allow)
    assert (stats.count, stats.cycle_sum, stats.histogram) == (count, cycle_sum, hist)


def test_partition_known_values():
    c6 = two_factor_stats(cycle_graph(6), allow_edge_as_2cycle=True)
    assert c6.count == 3 and c6.mean() == Fraction(7, 3)
    k222 = two_factor_stats(complete_tripartite_222())
    assert k222.count == 20 and k222.mean() == Fraction(6, 5)
    assert k222.histogram == {1: 16, 2: 4}
    k5 = two_factor_stats(complete_graph(5))
    assert k5.count == 12 and k5.mean() == Fraction(1)


def test_three_block_splice_measured_values():
    # regression anchors: the splice stays below the plain three-clique
    # union, so it is a measured data point, not an improvement
    from cyclefactor.families import three_block_splice, undirected_family

    spliced = two_factor_stats(three_block_splice(5))
    assert (spliced.count, spliced.cycle_sum) == (432, 864)
    assert spliced.histogram == {1: 216, 3: 216}
    assert spliced.mean() == Fraction(2)
    plain = two_factor_stats(undirected_family("clique", 5, copies=3))
    assert plain.mean() == Fraction(3)
    assert spliced.mean() < plain.mean()


def test_partition_convolution_over_components():
    from cyclefactor.graphs import u_disjoint_union

    one = two_factor_stats(complete_tripartite_222())
    five = two_factor_stats(u_disjoint_union([complete_tripartite_222()] * 5))
    assert five.count == one.count**5
    assert five.mean() == 5 * one.mean()
    assert five.mean() == Fraction(6)


def test_partition_empty_cases():
    none = two_factor_stats(UGraph(3, []))  # 3 isolated vertices
    assert none.count == 0
    with pytest.raises(NoCycleFactorError):
        none.mean()


# ---------------------------------------------------------------------------
# permanent oracle
# ---------------------------------------------------------------------------


@settings(max_examples=60)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, 3), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
)
def test_ryser_matches_expansion(rows):
    assert ryser_permanent(rows) == brute_permanent(rows)


def test_ryser_basics():
    assert ryser_permanent([]) == 1
    assert ryser_permanent([[1, 1], [1, 1]]) == 2
    assert ryser_permanent([[1] * 5 for _ in range(5)]) == 120
    with pytest.raises(ValueError):
        ryser_permanent([[1, 2]])


# ---------------------------------------------------------------------------
# composition laws
# ---------------------------------------------------------------------------


def test_union_multiplies_counts_and_adds_means():
    a = complete_looped(3)
    b = looped_bidirected_cycle(4)
    u = disjoint_union([a, b])
    sa, sb, su = map(cycle_factor_stats, (a, b, u))
    assert su.count == sa.count * sb.count
    assert su.mean() == sa.mean() + sb.mean()
    assert su.cycle_sum == sa.cycle_sum * sb.count + sb.cycle_sum * sa.count
