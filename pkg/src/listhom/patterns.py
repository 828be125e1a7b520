"""Named small graphs used throughout: forbidden-subgraph patterns for the
two hereditary classes, plus a handful of pocket-sized targets.

The bipartite-permutation obstructions (X3, X2, T2 and cycles of length
other than four) are irreflexive; the proper-interval obstructions (claw,
net, S3 and cycles of length at least four) are reflexive.
"""

from __future__ import annotations

from .graphs import ColourGraph


def _with_loops(n: int, edges: list[tuple[int, int]]) -> ColourGraph:
    return ColourGraph.from_edges(n, edges + [(v, v) for v in range(1, n + 1)])


def cycle(length: int, *, reflexive: bool = False) -> ColourGraph:
    """Cycle on vertices 1..length in cyclic order."""
    if length < 3:
        raise ValueError("cycles need at least 3 vertices")
    edges = [(v, v + 1) for v in range(1, length)] + [(length, 1)]
    return _with_loops(length, edges) if reflexive else ColourGraph.from_edges(length, edges)


def path(vertices: int, *, reflexive: bool = False) -> ColourGraph:
    """Path on vertices 1..vertices in order."""
    if vertices < 1:
        raise ValueError("paths need at least 1 vertex")
    edges = [(v, v + 1) for v in range(1, vertices)]
    return _with_loops(vertices, edges) if reflexive else ColourGraph.from_edges(vertices, edges)


def complete(n: int, *, reflexive: bool) -> ColourGraph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return _with_loops(n, edges) if reflexive else ColourGraph.from_edges(n, edges)


def complete_bipartite(a: int, b: int) -> ColourGraph:
    """Irreflexive K_{a,b} with side {1..a} against {a+1..a+b}."""
    edges = [(u, a + v) for u in range(1, a + 1) for v in range(1, b + 1)]
    return ColourGraph.from_edges(a + b, edges)


def star(leaves: int, *, reflexive: bool = False) -> ColourGraph:
    """Star with centre leaves+1 and leaves 1..leaves."""
    edges = [(v, leaves + 1) for v in range(1, leaves + 1)]
    return _with_loops(leaves + 1, edges) if reflexive else ColourGraph.from_edges(leaves + 1, edges)


# Edge with a loop on one endpoint; colourings against it pick out
# independent sets (colour 1 = "in").
K2_PRIME = ColourGraph.from_edges(2, [(1, 2), (2, 2)])

# Looped path 1-2-3 with pendant 4 on the centre; the smallest target whose
# list problem is strictly harder than its plain counting problem.
TWO_WRENCH = ColourGraph.from_edges(
    4, [(1, 2), (2, 3), (2, 4), (2, 2), (3, 3), (4, 4)]
)

# Reflexive path on three vertices.
P3_STAR = path(3, reflexive=True)

# Irreflexive path on four vertices.
P4 = path(4)

# Bipartite-permutation obstructions (irreflexive, 7 vertices each).
X3 = ColourGraph.from_edges(
    7, [(6, 5), (5, 1), (1, 4), (4, 2), (2, 7), (7, 6), (6, 4), (4, 3)]
)
X2 = ColourGraph.from_edges(
    7, [(1, 6), (6, 2), (2, 7), (2, 4), (4, 3), (4, 1), (1, 5)]
)
T2 = ColourGraph.from_edges(
    7, [(6, 1), (1, 5), (5, 4), (4, 3), (5, 2), (2, 7)]
)

# Proper-interval obstructions (reflexive).
CLAW = _with_loops(4, [(4, 1), (4, 2), (4, 3)])
NET = _with_loops(6, [(5, 1), (1, 4), (4, 2), (2, 6), (3, 4), (1, 2)])
S3 = _with_loops(
    6, [(4, 1), (1, 3), (3, 2), (2, 6), (6, 5), (5, 4), (1, 2), (2, 5), (5, 1)]
)
