"""Closed forms for cycle-factor statistics, evaluated exactly.

Covers harmonic numbers, completion counts of partial permutations on
complete looped digraphs, the per-crossing-pattern table of the six-class
gadget, and the gadget's excess over the looped-clique benchmark 2*H_d.
Everything is int or Fraction; floats appear only in report rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InternalCheckError

CROSSING_ARC_ORDER = ("u1", "v1", "u2", "v2")

# Counting in/out arcs across the two gadget halves forces the number of
# used arcs among {u1, v1} to equal the number among {u2, v2}, which kills
# 10 of the 16 conceivable patterns.
ALLOWED_PATTERNS = frozenset(
    {"none", "u1u2", "v1v2", "u1v2", "v1u2", "u1v1u2v2"}
)

# Row grouping of the pattern table: patterns in one row share count & mean.
ROW_GROUPS = (("none",), ("u1v2", "v1u2"), ("u1v1u2v2",), ("u1u2", "v1v2"))


@dataclass(frozen=True)
class TableRow:
    patterns: tuple[str, ...]
    count: int
    mean: Fraction


@dataclass(frozen=True)
class GadgetClosedForm:
    """Exact cycle-factor statistics of the 2d-vertex crossing gadget.

    count and cycle_sum are the number of cycle-factors and their total
    cycle count; excess = expectation - 2*H_d is the margin over two
    disjoint looped d-cliques on the same vertex count.
    """

    d: int
    count: int
    cycle_sum: int
    expectation: Fraction
    excess: Fraction
    rows: tuple[TableRow, ...]


def pattern_name(used) -> str:
    """Canonical name of a crossing-arc subset; "none" for the empty set."""
    picked = [a for a in CROSSING_ARC_ORDER if a in used]
    if len(picked) != len(set(used)):
        raise ValueError(f"unknown crossing arc label in {sorted(used)!r}")
    return "".join(picked) if picked else "none"


def harmonic(m: int) -> Fraction:
    """H_m = 1 + 1/2 + ... + 1/m exactly; H_0 = 0."""
    if m < 0:
        raise ValueError("harmonic number needs m >= 0")
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def partial_perm_count(n: int, r: int) -> int:
    """Permutations of n points extending a fixed partial permutation of r arcs.

    On the complete looped digraph every extension is admissible, so the
    value is (n-r)! regardless of the shape of the prescribed arcs.
    """
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    return factorial(n - r)


def partial_perm_cycle_sum(n: int, r: int, q: int) -> int:
    """Total cycle count over all extensions of a partial permutation.

    r is the number of prescribed arcs, q the number of cycles they already
    close; the sum is (n-r)!*(H_{n-r} + q), always an integer.
    """
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    if not 0 <= q <= r:
        raise ValueError("a prescribed cycle consumes at least one arc: 0 <= q <= r")
    total = factorial(n - r) * (harmonic(n - r) + q)
    if total.denominator != 1:
        raise InternalCheckError("cycle sum came out non-integral")
    return total.numerator


def no_crossing_block_counts(d: int) -> tuple[int, int]:
    """Count and cycle sum for one gadget half with both crossing arcs unused.

    The half induces a complete looped digraph on d vertices minus one pair
    of opposite non-loop arcs; inclusion-exclusion over the two missing
    arcs gives the pair (N0, S0).  d=2 is admitted for degenerate oracle
    tests under the conventions 0! = 1 and H_0 = 0.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    n0 = factorial(d) - 2 * factorial(d - 1) + factorial(d - 2)
    if n0 != factorial(d - 2) * (d * d - 3 * d + 3):
        raise InternalCheckError("two routes to the block count disagree")
    s0 = (
        factorial(d) * harmonic(d)
        - 2 * factorial(d - 1) * harmonic(d - 1)
        + factorial(d - 2) * (harmonic(d - 2) + 1)
    )
    if s0.denominator != 1:
        raise InternalCheckError("block cycle sum came out non-integral")
    return n0, s0.numerator


def crossing_pattern_table(d: int) -> list[TableRow]:
    """The four-row table of (patterns, count, mean cycles) for the gadget.

    Rows, in fixed order: no crossing arc used; one two-cycle closed across
    a half boundary (two symmetric patterns); both such two-cycles; one
    long cycle threading both halves (two symmetric patterns).
    """
    if d < 3:
        raise ValueError("need d >= 3")
    n0, s0 = no_crossing_block_counts(d)
    h1 = harmonic(d - 1)
    h2 = harmonic(d - 2)
    rows = [
        TableRow(ROW_GROUPS[0], n0 * n0, Fraction(2 * s0, n0)),
        TableRow(ROW_GROUPS[1], 2 * factorial(d - 1) ** 2, 2 * h1 + 1),
        TableRow(ROW_GROUPS[2], factorial(d - 2) ** 2, 2 * h2 + 2),
        TableRow(ROW_GROUPS[3], 2 * (factorial(d - 2) * (d - 2)) ** 2, 2 * h2 - 1),
    ]
    return rows


def _excess_cubic(d: int) -> int:
    return 3 * d**3 - 14 * d**2 + 25 * d - 10


def _excess_cubic_derivative(d: int) -> int:
    return 9 * d**2 - 28 * d + 25


def _gadget_quartic(d: int) -> int:
    return d**4 - 6 * d**3 + 19 * d**2 - 30 * d + 20


def benchmark_excess(d: int) -> Fraction:
    """Closed-form excess of the gadget mean over 2*H_d, without any table."""
    if d < 3:
        raise ValueError("need d >= 3")
    return Fraction(
        2 * (d - 2) * _excess_cubic(d), d * (d - 1) * _gadget_quartic(d)
    )


def gadget_closed_form(d: int) -> GadgetClosedForm:
    """Aggregate the pattern table into exact N, T, mean, and excess.

    Cross-checks the aggregate against the product formula for N and the
    closed-form excess; a mismatch raises InternalCheckError.
    """
    rows = crossing_pattern_table(d)
    count = sum(r.count for r in rows)
    if count != factorial(d - 2) ** 2 * _gadget_quartic(d):
        raise InternalCheckError("factor count disagrees with the closed form")
    cycle_sum = sum((r.count * r.mean for r in rows), Fraction(0))
    if cycle_sum.denominator != 1:
        raise InternalCheckError("total cycle sum came out non-integral")
    expectation = Fraction(cycle_sum, count)
    excess = expectation - 2 * harmonic(d)
    if excess != benchmark_excess(d):
        raise InternalCheckError("table excess disagrees with the closed form")
    return GadgetClosedForm(d, count, cycle_sum.numerator, expectation, excess, tuple(rows))


def excess_numerator_positive(d_max: int) -> bool:
    """True iff the excess cubic and its derivative are positive on 3..d_max.

    Positivity of the derivative makes the cubic increasing, so spot checks
    plus this scan certify the excess sign for every listed degree.
    """
    if d_max < 3:
        raise ValueError("need d_max >= 3")
    return all(
        _excess_cubic(d) > 0 and _excess_cubic_derivative(d) > 0
        for d in range(3, d_max + 1)
    )


def scaled_excess(d: int) -> Fraction:
    """d^2 times the closed-form excess; approaches 6 for large d."""
    return d * d * benchmark_excess(d)
