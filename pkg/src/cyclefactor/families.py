"""Generators for the graph families used throughout the project.

Directed families: complete looped digraphs, looped bidirected cycles, the
six-class crossing gadget (the degree-d counterexample construction), and
its clique-padded extensions.  Undirected families: cycles, cliques, the
octahedron K_{2,2,2}, and the three-block clique splice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Arc, DiGraph, UGraph, disjoint_union, u_disjoint_union

CLASS_NAMES = ("A1", "B1", "C1", "A2", "B2", "C2")


@dataclass(frozen=True)
class GadgetLabeling:
    """Class labels and crossing arcs of the six-class gadget.

    class_of[v] is one of A1, B1, C1, A2, B2, C2.  The four crossing arcs
    u1: B1->A1, v1: A2->B2, u2: B2->A2, v2: A1->B1 are exactly the arcs
    between the two halves D1 = B1+C1+A2 and D2 = B2+C2+A1.
    """

    class_of: tuple[str, ...]
    crossing_arcs: dict[str, Arc]

    def half_1(self) -> frozenset[int]:
        return frozenset(
            v for v, c in enumerate(self.class_of) if c in ("B1", "C1", "A2")
        )

    def half_2(self) -> frozenset[int]:
        return frozenset(
            v for v, c in enumerate(self.class_of) if c in ("B2", "C2", "A1")
        )


def complete_looped(m: int) -> DiGraph:
    """Complete looped digraph on m vertices: every ordered pair is an arc."""
    if m < 1:
        raise ValueError("complete looped digraph needs at least one vertex")
    return DiGraph(m, [range(m)] * m)


def looped_bidirected_cycle(n: int) -> DiGraph:
    """3-regular digraph on Z_n with arcs i->i, i->i+1, i->i-1 (mod n)."""
    if n < 4:
        raise ValueError("need n >= 4: below that the three arcs collide mod n")
    return DiGraph(n, [[(v - 1) % n, v, (v + 1) % n] for v in range(n)])


def crossing_gadget(d: int) -> tuple[DiGraph, GadgetLabeling]:
    """The 2d-vertex d-regular gadget built from six classes in cyclic order.

    Classes A1, B1, C1, A2, B2, C2 have sizes 1, 1, d-2, 1, 1, d-2.  Each
    class is internally complete looped; consecutive classes in the cyclic
    order are joined by all arcs in both directions.  For d=3 the result is
    arc-identical to looped_bidirected_cycle(6).
    """
    if d < 3:
        raise ValueError("gadget needs d >= 3 so the C classes are nonempty")
    n = 2 * d
    classes = [[0], [1], list(range(2, d)), [d], [d + 1], list(range(d + 2, n))]
    rows: list[set[int]] = [set() for _ in range(n)]
    for i, cls in enumerate(classes):
        for u in cls:
            rows[u].update(cls)
        for u in cls:
            for w in classes[(i + 1) % 6]:
                rows[u].add(w)
                rows[w].add(u)
    labels = [""] * n
    for name, cls in zip(CLASS_NAMES, classes):
        for v in cls:
            labels[v] = name
    crossing = {
        "u1": (1, 0),          # B1 -> A1
        "v1": (d, d + 1),      # A2 -> B2
        "u2": (d + 1, d),      # B2 -> A2
        "v2": (0, 1),          # A1 -> B1
    }
    g = DiGraph(n, [sorted(r) for r in rows], tuple(labels))
    return g, GadgetLabeling(tuple(labels), crossing)


def padded_gadget(k: int, d: int) -> DiGraph:
    """The kd-vertex d-regular graph: crossing gadget plus k-2 looped cliques."""
    if k < 2:
        raise ValueError("need k >= 2 (k=2 is the bare gadget)")
    if d < 3:
        raise ValueError("need d >= 3")
    gadget, _ = crossing_gadget(d)
    return disjoint_union([gadget] + [complete_looped(d)] * (k - 2))


# ---------------------------------------------------------------------------
# Undirected families
# ---------------------------------------------------------------------------


def cycle_graph(n: int) -> UGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return UGraph(n, [(v, (v + 1) % n) for v in range(n)])


def complete_graph(m: int) -> UGraph:
    if m < 1:
        raise ValueError("clique needs m >= 1")
    return UGraph(m, [(u, v) for u in range(m) for v in range(u + 1, m)])


def complete_tripartite_222() -> UGraph:
    """K_{2,2,2}, the octahedron: 4-regular, 12 edges."""
    parts = [(0, 1), (2, 3), (4, 5)]
    edges = [
        (u, v)
        for i, p in enumerate(parts)
        for q in parts[i + 1 :]
        for u in p
        for v in q
    ]
    return UGraph(6, edges)


def undirected_family(name: str, size: int = 0, copies: int = 1) -> UGraph:
    """Dispatcher for the named undirected families, with disjoint copies.

    name is one of "cycle" (C_size), "clique" (K_size), "k222" (K_{2,2,2}).
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    if name == "cycle":
        base = cycle_graph(size)
    elif name == "clique":
        base = complete_graph(size)
    elif name == "k222":
        base = complete_tripartite_222()
    else:
        raise ValueError(f"unknown undirected family {name!r}")
    return u_disjoint_union([base] * copies) if copies > 1 else base


def three_block_splice(m: int) -> UGraph:
    """Three K_m blocks, one edge deleted per block, exposed ends rejoined cyclically.

    In block i the deleted edge is {a_i, b_i} with a_i, b_i the two
    lowest-indexed vertices of the block; the new edges are b_1-a_2,
    b_2-a_3, b_3-a_1.  The result is (m-1)-regular on 3m vertices.
    """
    if m < 4:
        raise ValueError("splice needs m >= 4")
    edges = []
    anchors = []
    for i in range(3):
        off = i * m
        a, b = off, off + 1
        anchors.append((a, b))
        for u in range(m):
            for v in range(u + 1, m):
                if (off + u, off + v) != (a, b):
                    edges.append((off + u, off + v))
    for i in range(3):
        edges.append((anchors[i][1], anchors[(i + 1) % 3][0]))
    return UGraph(3 * m, edges)
