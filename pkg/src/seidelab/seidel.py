"""Seidel switching, SC-equivalence to the complete graph, and odd pairs.

Switching on a vertex subset W flips every edge with exactly one endpoint in
W; it conjugates the Seidel matrix by the diagonal +-1 matrix of W, so the
Seidel spectrum is invariant.  An odd pair is an ordered pair (X, Y) of
disjoint 2-subsets with an odd number of cross edges; their count is an
SC-invariant and is zero exactly on the switching class of the complete
graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .graphs import Graph, complement, encode_graph6

SWITCHING_KEY_MAX_N = 8


@dataclass(frozen=True)
class SCWitness:
    """How a graph was normalized: the switching set applied (as a bitmask)
    and whether complementation was needed to reach the complete graph."""

    switching_mask: int
    complemented: bool


def switch(g: Graph, subset) -> Graph:
    """Seidel switching on a vertex subset (iterable of vertices or bitmask)."""
    w = subset if isinstance(subset, int) else _mask_of(subset)
    full = (1 << g.n) - 1
    rows = []
    for i in range(g.n):
        if w >> i & 1:
            flip = full & ~w
        else:
            flip = w
        rows.append((g.rows[i] ^ flip) & ~(1 << i) & full)
    return Graph(g.n, tuple(rows))


def _mask_of(subset) -> int:
    m = 0
    for v in subset:
        m |= 1 << v
    return m


def is_sc_equivalent_to_complete(g: Graph) -> tuple[bool, SCWitness | None]:
    """Decide SC-equivalence to K_n, with the normalizing switch as witness.

    Switch on the complement of N[v0] so that vertex 0 becomes universal;
    the graph is SC-equivalent to K_n iff the remaining vertices then induce
    a complete graph (no complement needed) or an empty one (complement
    needed).  The witness satisfies switch(g, mask) = K_n when complemented
    is false, and complement(switch(g, mask)) = K_n when it is true.
    """
    full = (1 << g.n) - 1
    mask = full & ~g.closed_neighborhood(0)
    h = switch(g, mask)
    induced_complete = all((h.rows[i] | 1 | (1 << i)) == full for i in range(1, g.n))
    if induced_complete:
        return True, SCWitness(mask, complemented=False)
    induced_empty = all(h.rows[i] == 1 for i in range(1, g.n))
    if induced_empty:
        # one further switch on {v0} empties the graph; its complement is K_n
        return True, SCWitness(mask ^ 1, complemented=True)
    return False, None


def count_odd_pairs(g: Graph) -> int:
    """Number of ordered pairs (X, Y) of disjoint 2-subsets with an odd
    number of cross edges.  Always even; zero for n < 4."""
    n = g.n
    if n < 4:
        return 0
    count = 0
    for x1, x2 in combinations(range(n), 2):
        # (X, {y1, y2}) is odd iff bits y1, y2 of rows[x1] ^ rows[x2] differ,
        # so the odd second elements for this X number ones * zeros
        rx = (g.rows[x1] ^ g.rows[x2]) & ~(1 << x1) & ~(1 << x2)
        ones = bin(rx).count("1")
        count += ones * (n - 2 - ones)
    return count


def _isolate_vertex0(g: Graph) -> Graph:
    """The unique member of g's switching class in which vertex 0 is isolated."""
    return switch(g, g.neighborhood(0))


def switching_class_key(g: Graph) -> bytes:
    """Canonical key equal for two graphs iff their SC-classes coincide
    up to relabeling.

    Minimizes the graph6 encoding of the vertex-0-isolated switching-class
    representative over all vertex permutations of g and of its complement.
    Factorial cost; refused above n = 8.
    """
    if g.n > SWITCHING_KEY_MAX_N:
        raise ValueError(
            f"switching_class_key is exact-canonical only for n <= {SWITCHING_KEY_MAX_N}"
        )
    best = None
    for h in (g, complement(g)):
        for perm in permutations(range(g.n)):
            cand = encode_graph6(_isolate_vertex0(h.permute(perm))).encode("ascii")
            if best is None or cand < best:
                best = cand
    return best
