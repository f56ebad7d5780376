"""Exact brute-force engines for factor statistics.

Directed side: cycle-factor counts, cycle-count histograms, fixed-point
sums, per-arc usage, and constrained enumeration with prescribed or
forbidden arcs.  Undirected side: spanning partitions into cycles
(optionally also single matched edges), matchings of cycles, and a Ryser
permanent used as an independent counting oracle.

Cycle counts are maintained incrementally while vertices are assigned in
increasing order: each open path keeps its two endpoints spliced together
in a successor/predecessor table, so closing a path into a cycle is an
O(1) test instead of a decomposition pass at every leaf.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InternalCheckError, NoCycleFactorError
from .exact import (
    ALLOWED_PATTERNS,
    CROSSING_ARC_ORDER,
    ROW_GROUPS,
    TableRow,
    pattern_name,
)
from .families import crossing_gadget, looped_bidirected_cycle
from .graphs import Arc, DiGraph, UGraph

MAX_FAST_VERTICES = 64


@dataclass(frozen=True)
class FactorStats:
    """Exact aggregate statistics over a set of factors.

    histogram maps a cycle count to the number of factors attaining it.
    fix_sum totals the fixed points (loops used) across all factors.
    edge_usage, when requested, maps each arc to the number of factors
    containing it; arcs in no factor are omitted.
    """

    count: int
    cycle_sum: int
    histogram: dict[int, int]
    fix_sum: int = 0
    edge_usage: dict[Arc, int] | None = None

    def mean(self) -> Fraction:
        if self.count == 0:
            raise NoCycleFactorError("no factor exists")
        return Fraction(self.cycle_sum, self.count)


@dataclass(frozen=True)
class ArcConstraints:
    """Prescribed and excluded arcs for constrained enumeration.

    required must form a partial permutation: no two arcs may share a tail
    or share a head.  required and forbidden must be disjoint.  Required
    arcs absent from the graph make the count 0 rather than erroring.
    """

    required: frozenset[Arc] = frozenset()
    forbidden: frozenset[Arc] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "required", frozenset(self.required))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        tails = [a[0] for a in self.required]
        heads = [a[1] for a in self.required]
        if len(set(tails)) != len(tails) or len(set(heads)) != len(heads):
            raise ValueError("required arcs must form a partial permutation")
        if self.required & self.forbidden:
            raise ValueError("an arc cannot be both required and forbidden")


def _thread_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    raw = os.environ.get("CYCLEFACTOR_THREADS", "").strip()
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _candidate_rows(g: DiGraph, constraints: ArcConstraints | None) -> list[list[int]]:
    req_head: dict[int, int] = {}
    req_heads: set[int] = set()
    forbidden: frozenset[Arc] = frozenset()
    if constraints is not None:
        for tail, head in constraints.required:
            req_head[tail] = head
            req_heads.add(head)
        forbidden = constraints.forbidden
    rows = []
    for v in range(g.n):
        if v in req_head:
            h = req_head[v]
            rows.append([h] if g.has_arc(v, h) else [])
        else:
            rows.append(
                [w for w in g.out[v] if (v, w) not in forbidden and w not in req_heads]
            )
    return rows


def _empty_stats(want_edge_usage: bool) -> FactorStats:
    return FactorStats(0, 0, {}, 0, {} if want_edge_usage else None)


def _enumerate_chunk(n, cand, first_arcs, want_usage):
    # One independent slice of the search tree: the given branches at
    # vertex 0, full branching below.  Returns raw merge-ready fields.
    start = list(range(n))
    end = list(range(n))
    hist = [0] * (n + 1)
    acc = [0, 0, 0]  # count, cycle_sum, fix_sum
    usage: dict[Arc, int] | None = {} if want_usage else None

    def rec(v, used, cycles, fix):
        if v == n:
            acc[0] += 1
            acc[1] += cycles
            acc[2] += fix
            hist[cycles] += 1
            return
        nxt = v + 1
        s = start[v]
        for w, bit in cand[v]:
            if used & bit:
                continue
            before = acc[0] if usage is not None else 0
            if w == s:
                rec(nxt, used | bit, cycles + 1, fix + (w == v))
            else:
                e = end[w]
                start[e] = s
                end[s] = e
                rec(nxt, used | bit, cycles, fix)
                start[e] = w
                end[s] = v
            if usage is not None and acc[0] > before:
                usage[v, w] = usage.get((v, w), 0) + acc[0] - before

    if n == 1:
        # only candidate is the loop; vertex 0 closes immediately
        for w, bit in first_arcs:
            acc[0] += 1
            acc[1] += 1
            acc[2] += 1
            hist[1] += 1
            if usage is not None:
                usage[0, 0] = usage.get((0, 0), 0) + 1
    else:
        for w, bit in first_arcs:
            before = acc[0]
            if w == 0:
                rec(1, bit, 1, 1)
            else:
                e = end[w]
                start[e] = 0
                end[0] = e
                rec(1, bit, 0, 0)
                start[e] = w
                end[0] = 0
            if usage is not None and acc[0] > before:
                usage[0, w] = usage.get((0, w), 0) + acc[0] - before
    return acc[0], acc[1], acc[2], hist, usage


def cycle_factor_stats(
    g: DiGraph,
    constraints: ArcConstraints | None = None,
    want_edge_usage: bool = False,
    threads: int | None = None,
    max_vertices: int = MAX_FAST_VERTICES,
) -> FactorStats:
    """Exact statistics over every cycle-factor of g meeting the constraints.

    A cycle-factor is a permutation sigma of the vertices with v -> sigma(v)
    an arc for every v.  Enumeration assigns sigma(v) in increasing vertex
    order under a used-heads bitmask.  threads > 1 splits the branches at
    vertex 0 across a thread pool; results merge by field-wise addition, so
    the output does not depend on the thread count.
    """
    n = g.n
    if n > max_vertices:
        raise ValueError(f"graph order {n} exceeds the fast-path limit {max_vertices}")
    if n == 0:
        return FactorStats(1, 0, {0: 1}, 0, {} if want_edge_usage else None)
    rows = _candidate_rows(g, constraints)
    if any(not row for row in rows):
        return _empty_stats(want_edge_usage)
    cand = [[(w, 1 << w) for w in row] for row in rows]
    nthreads = min(_thread_count(threads), len(cand[0]))
    if nthreads <= 1:
        parts = [_enumerate_chunk(n, cand, cand[0], want_edge_usage)]
    else:
        chunks = [cand[0][i::nthreads] for i in range(nthreads)]
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            parts = list(
                pool.map(
                    lambda sl: _enumerate_chunk(n, cand, sl, want_edge_usage), chunks
                )
            )
    count = sum(p[0] for p in parts)
    if count == 0:
        return _empty_stats(want_edge_usage)
    cycle_sum = sum(p[1] for p in parts)
    fix_sum = sum(p[2] for p in parts)
    hist: dict[int, int] = {}
    for p in parts:
        for k, v in enumerate(p[3]):
            if v:
                hist[k] = hist.get(k, 0) + v
    usage: dict[Arc, int] | None = None
    if want_edge_usage:
        usage = {}
        for p in parts:
            for a, c in p[4].items():
                usage[a] = usage.get(a, 0) + c
    return FactorStats(count, cycle_sum, dict(sorted(hist.items())), fix_sum, usage)


def iter_cycle_factors(
    g: DiGraph, constraints: ArcConstraints | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield each cycle-factor as a successor tuple sigma."""
    n = g.n
    if n == 0:
        yield ()
        return
    rows = _candidate_rows(g, constraints)
    if any(not row for row in rows):
        return
    sigma = [-1] * n

    def rec(v, used):
        if v == n:
            yield tuple(sigma)
            return
        for w in rows[v]:
            bit = 1 << w
            if used & bit:
                continue
            sigma[v] = w
            yield from rec(v + 1, used | bit)

    yield from rec(0, 0)


def permutation_cycles(sigma: Sequence[int]) -> int:
    """Number of cycles of a permutation given as a successor table."""
    seen = [False] * len(sigma)
    cycles = 0
    for v in range(len(sigma)):
        if not seen[v]:
            cycles += 1
            w = v
            while not seen[w]:
                seen[w] = True
                w = sigma[w]
    return cycles


def expected_cycles(g: DiGraph, threads: int | None = None) -> Fraction:
    """Mean cycle count over all cycle-factors, exact."""
    stats = cycle_factor_stats(g, threads=threads)
    if stats.count == 0:
        raise NoCycleFactorError("no cycle-factor")
    return stats.mean()


def classify_crossing_patterns(d: int, max_d: int = 7) -> list[TableRow]:
    """Bucket the crossing gadget's factors by which crossing arcs they use.

    One full enumeration with a 4-bit pattern accumulator.  Degree balance
    between the two gadget halves permits only six patterns; observing any
    other raises InternalCheckError.  Buckets are aggregated into the four
    fixed row groups so the result is comparable to crossing_pattern_table.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    if d > max_d:
        raise ValueError(f"degree {d} above the enumeration limit {max_d}")
    g, labeling = crossing_gadget(d)
    n = g.n
    bit_of = {name: 1 << i for i, name in enumerate(CROSSING_ARC_ORDER)}
    special_head = [-1] * n
    special_bit = [0] * n
    for name, (tail, head) in labeling.crossing_arcs.items():
        special_head[tail] = head
        special_bit[tail] = bit_of[name]
    cand = [[(w, 1 << w) for w in row] for row in g.out]
    start = list(range(n))
    end = list(range(n))
    bucket_count = [0] * 16
    bucket_sum = [0] * 16

    def rec(v, used, cycles, pat):
        if v == n:
            bucket_count[pat] += 1
            bucket_sum[pat] += cycles
            return
        nxt = v + 1
        s = start[v]
        sh = special_head[v]
        sb = special_bit[v]
        for w, bit in cand[v]:
            if used & bit:
                continue
            p2 = pat | sb if w == sh else pat
            if w == s:
                rec(nxt, used | bit, cycles + 1, p2)
            else:
                e = end[w]
                start[e] = s
                end[s] = e
                rec(nxt, used | bit, cycles, p2)
                start[e] = w
                end[s] = v

    rec(0, 0, 0, 0)
    name_of = [
        pattern_name({nm for nm in CROSSING_ARC_ORDER if bit_of[nm] & mask})
        for mask in range(16)
    ]
    for mask in range(16):
        if bucket_count[mask] and name_of[mask] not in ALLOWED_PATTERNS:
            raise InternalCheckError(
                f"impossible crossing pattern {name_of[mask]} observed"
            )
    table = []
    for group in ROW_GROUPS:
        cnt = sum(bucket_count[m] for m in range(16) if name_of[m] in group)
        tot = sum(bucket_sum[m] for m in range(16) if name_of[m] in group)
        if cnt == 0:
            raise InternalCheckError(f"crossing pattern row {group} is empty")
        table.append(TableRow(group, cnt, Fraction(tot, cnt)))
    return table


# ---------------------------------------------------------------------------
# Looped bidirected cycles: factors versus matchings
# ---------------------------------------------------------------------------


def _cycle_matchings(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # matchings of the undirected n-cycle with edges (i, i+1 mod n)
    edges = [(i, (i + 1) % n) for i in range(n)]

    def rec(i, used, cur):
        if i == len(edges):
            yield tuple(cur)
            return
        yield from rec(i + 1, used, cur)
        u, v = edges[i]
        if not used >> u & 1 and not used >> v & 1:
            cur.append((u, v))
            yield from rec(i + 1, used | 1 << u | 1 << v, cur)
            cur.pop()

    yield from rec(0, 0, [])


def gn_classification_check(n: int, max_n: int = 16) -> bool:
    """Factors of the looped bidirected n-cycle = 2 rotations + matchings.

    Compares the enumerated factor set against the set built from the two
    full rotations plus one swap-factor per matching of the n-cycle (matched
    pairs transposed, everything else fixed by its loop).
    """
    if not 4 <= n <= max_n:
        raise ValueError(f"need 4 <= n <= {max_n}")
    g = looped_bidirected_cycle(n)
    found = set(iter_cycle_factors(g))
    expected = {
        tuple((v + 1) % n for v in range(n)),
        tuple((v - 1) % n for v in range(n)),
    }
    for matching in _cycle_matchings(n):
        sigma = list(range(n))
        for u, v in matching:
            sigma[u], sigma[v] = v, u
        expected.add(tuple(sigma))
    return found == expected


def _poly_add_shift(a: list[int], b: list[int]) -> list[int]:
    # a(x) + x*b(x) as coefficient lists
    out = list(a) + [0] * max(0, len(b) + 1 - len(a))
    for i, c in enumerate(b):
        out[i + 1] += c
    return out


def cycle_matching_counts(n: int) -> list[int]:
    """Matchings of the n-cycle counted by size, for sizes 0..n//2.

    Path DP: appending a vertex either leaves it unmatched or matches it to
    its predecessor; the cycle closes by splitting on the wrap-around edge.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    paths = [[1], [1]]
    for _ in range(2, n + 1):
        paths.append(_poly_add_shift(paths[-1], paths[-2]))
    return _poly_add_shift(paths[n], paths[n - 2])


# ---------------------------------------------------------------------------
# Undirected engine: partitions into cycles (and optionally single edges)
# ---------------------------------------------------------------------------


def _components(g: UGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for v0 in range(g.n):
        if seen[v0]:
            continue
        stack = [v0]
        seen[v0] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _partition_histogram(g: UGraph, comp: list[int], allow_edges: bool) -> dict[int, int]:
    # histogram {number of parts: ways} over spanning partitions of the
    # component into cycle parts (length >= 3) and, optionally, edge parts
    adj = g.adj
    unassigned = set(comp)
    hist: Counter[int] = Counter()

    def grow(path, nparts):
        # extend the current part's open path, or close it into a cycle;
        # the path is anchored at its minimal vertex path[0], and the
        # direction is fixed by path[1] < path[-1] at closing time
        u = path[-1]
        if len(path) >= 3 and path[1] < u and g.has_edge(path[0], u):
            rec(nparts + 1)
        for w in adj[u]:
            if w in unassigned:
                unassigned.discard(w)
                path.append(w)
                grow(path, nparts)
                path.pop()
                unassigned.add(w)

    def rec(nparts):
        if not unassigned:
            hist[nparts] += 1
            return
        v = min(unassigned)
        unassigned.discard(v)
        if allow_edges:
            for w in adj[v]:
                if w in unassigned:
                    unassigned.discard(w)
                    rec(nparts + 1)
                    unassigned.add(w)
        grow([v], nparts)
        unassigned.add(v)

    rec(0)
    return dict(hist)


def _convolve(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, 0) + va * vb
    return out


def two_factor_stats(g: UGraph, allow_edge_as_2cycle: bool = False) -> FactorStats:
    """Statistics of spanning partitions of g into cycles, scored by part count.

    With allow_edge_as_2cycle False the parts are cycles of length >= 3
    only, i.e. exactly the 2-factors of g.  With it True a part may also be
    a single matched edge, which counts as one cycle.  Components are
    enumerated independently and combined by histogram convolution.
    """
    hists = []
    for comp in _components(g):
        h = _partition_histogram(g, comp, allow_edge_as_2cycle)
        if not h:
            return FactorStats(0, 0, {})
        hists.append(h)
    total = {0: 1}
    for h in hists:
        total = _convolve(total, h)
    count = sum(total.values())
    cycle_sum = sum(k * v for k, v in total.items())
    return FactorStats(count, cycle_sum, dict(sorted(total.items())))


def ryser_permanent(matrix: Sequence[Sequence[int]]) -> int:
    """Permanent of a square nonnegative integer matrix by Ryser's formula.

    Exponential inclusion-exclusion over column subsets; independent of the
    factor enumeration, so the two can cross-check each other.
    """
    rows = [tuple(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    total = 0
    for s in range(1, 1 << n):
        cols = [j for j in range(n) if s >> j & 1]
        prod = 1
        for r in rows:
            prod *= sum(r[j] for j in cols)
            if prod == 0:
                break
        if prod:
            total += prod if (n - len(cols)) % 2 == 0 else -prod
    return total
