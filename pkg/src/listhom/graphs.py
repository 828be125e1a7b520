"""Core graph types and structural utilities.

Two kinds of graph live here.  A ColourGraph is the (small) target graph
whose vertices play the role of colours; it may carry loops but never
parallel edges.  An InstanceGraph is the (possibly large) loop-free input
graph whose vertices receive colours, optionally constrained by per-vertex
colour lists.

Vertices and colours are 1-indexed everywhere.  All values are immutable
after construction and every function in this module is pure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class ColourGraph:
    """Target graph over colours {1..n}, stored as a dense symmetric 0/1 matrix.

    adj[i-1][i-1] == 1 encodes a loop on colour i.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a colour graph needs at least one colour")
        if len(self.adj) != self.n or any(len(row) != self.n for row in self.adj):
            raise ValueError("adjacency matrix must be n x n")
        for i in range(self.n):
            for j in range(i, self.n):
                if self.adj[i][j] not in (0, 1):
                    raise ValueError("adjacency entries must be 0 or 1")
                if self.adj[i][j] != self.adj[j][i]:
                    raise ValueError("adjacency matrix must be symmetric")

    @classmethod
    def from_edges(cls, n: int, edges) -> "ColourGraph":
        """Build from an iterable of pairs; the pair (v, v) is a loop on v."""
        adj = [[0] * n for _ in range(n)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{n}")
            adj[u - 1][v - 1] = 1
            adj[v - 1][u - 1] = 1
        return cls(n, tuple(tuple(row) for row in adj))

    @property
    def colours(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, u: int, v: int) -> bool:
        return self.adj[u - 1][v - 1] == 1

    def has_loop(self, v: int) -> bool:
        return self.adj[v - 1][v - 1] == 1

    def neighbours(self, v: int) -> tuple[int, ...]:
        """Colours adjacent to v, including v itself when v has a loop."""
        row = self.adj[v - 1]
        return tuple(u for u in self.colours if row[u - 1])

    def degree(self, v: int) -> int:
        """Number of neighbours other than v itself (loops do not count)."""
        row = self.adj[v - 1]
        return sum(row) - row[v - 1]

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Bitmask per colour: bit (u-1) set iff u is adjacent to the colour."""
        out = []
        for v in self.colours:
            mask = 0
            for u in self.colours:
                if self.adj[v - 1][u - 1]:
                    mask |= 1 << (u - 1)
            out.append(mask)
        return tuple(out)

    def edge_list(self) -> list[tuple[int, int]]:
        """Sorted edges as (u, v) with u <= v; loops appear as (v, v)."""
        out = []
        for u in self.colours:
            for v in range(u, self.n + 1):
                if self.adj[u - 1][v - 1]:
                    out.append((u, v))
        return out


@dataclass(frozen=True)
class InstanceGraph:
    """Simple loop-free graph on vertices {1..m} with a canonical edge tuple."""

    m: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("vertex count must be non-negative")
        prev = None
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop ({u},{v}) not allowed in instance graphs")
            if not (1 <= u < v <= self.m):
                raise ValueError(f"edge ({u},{v}) not canonical or out of range")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edges must be strictly sorted")
            prev = (u, v)

    @classmethod
    def from_edges(cls, m: int, edges) -> "InstanceGraph":
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop on vertex {u} not allowed")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise ValueError(f"parallel edge {pair}")
            seen.add(pair)
        return cls(m, tuple(sorted(seen)))

    @property
    def vertices(self) -> range:
        return range(1, self.m + 1)

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        """neighbours[v-1] is the sorted tuple of neighbours of v."""
        nbr: list[list[int]] = [[] for _ in range(self.m)]
        for u, v in self.edges:
            nbr[u - 1].append(v)
            nbr[v - 1].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbr)


ListAssignment = tuple[frozenset[int], ...]


def full_lists(m: int, n: int) -> ListAssignment:
    """Every vertex allowed every colour of an n-colour target."""
    allcols = frozenset(range(1, n + 1))
    return tuple(allcols for _ in range(m))


@dataclass(frozen=True)
class Instance:
    """An input pair: a loop-free graph plus per-vertex allowed-colour sets.

    colour_count binds the instance to targets with that many colours.
    Empty lists are permitted (they force a zero count).
    """

    g: InstanceGraph
    lists: ListAssignment
    colour_count: int

    def __post_init__(self):
        if len(self.lists) != self.g.m:
            raise ValueError("lists must cover exactly the vertices of g")
        for v, s in enumerate(self.lists, start=1):
            for c in s:
                if not (1 <= c <= self.colour_count):
                    raise ValueError(f"vertex {v}: colour {c} out of range")

    @classmethod
    def with_full_lists(cls, g: InstanceGraph, n: int) -> "Instance":
        return cls(g, full_lists(g.m, n), n)


def connected_components(h: ColourGraph) -> list[frozenset[int]]:
    """Partition of the colours into maximal connected sets (loops irrelevant).

    Components are ordered by their smallest colour.
    """
    seen: set[int] = set()
    comps = []
    for start in h.colours:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in h.neighbours(v):
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def induced_subgraph(h: ColourGraph, verts) -> ColourGraph:
    """Restrict h to a nonempty vertex set, relabelling 1..k in ascending order.

    Loops are preserved.
    """
    vs = sorted(set(verts))
    if not vs:
        raise ValueError("cannot induce on an empty vertex set")
    for v in vs:
        if not (1 <= v <= h.n):
            raise ValueError(f"vertex {v} out of range 1..{h.n}")
    adj = tuple(tuple(h.adj[u - 1][v - 1] for v in vs) for u in vs)
    return ColourGraph(len(vs), adj)


def reflexivity_status(h: ColourGraph) -> str:
    """One of "reflexive", "irreflexive" or "mixed"."""
    loops = sum(h.adj[v - 1][v - 1] for v in h.colours)
    if loops == h.n:
        return "reflexive"
    if loops == 0:
        return "irreflexive"
    return "mixed"


def bipartition(g: InstanceGraph) -> tuple[frozenset[int], frozenset[int]] | None:
    """A proper 2-colouring (V1, V2) of g, or None if g has an odd cycle.

    In each component, the smallest-index vertex is placed in V1.
    """
    side: dict[int, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.neighbours[v - 1]:
                if u not in side:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    v1 = frozenset(v for v in g.vertices if side[v] == 0)
    v2 = frozenset(v for v in g.vertices if side[v] == 1)
    return v1, v2


def colour_bipartition(h: ColourGraph) -> tuple[frozenset[int], frozenset[int]] | None:
    """2-colouring of a colour graph; a loop counts as an odd cycle."""
    if any(h.has_loop(v) for v in h.colours):
        return None
    side: dict[int, int] = {}
    for start in h.colours:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in h.neighbours(v):
                if u not in side:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    v1 = frozenset(v for v in h.colours if side[v] == 0)
    v2 = frozenset(v for v in h.colours if side[v] == 1)
    return v1, v2


def instance_components(g: InstanceGraph) -> list[frozenset[int]]:
    """Connected components of an instance graph, ordered by smallest vertex."""
    seen: set[int] = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.neighbours[v - 1]:
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def max_degree(g: InstanceGraph) -> int:
    """Maximum vertex degree; 0 for edgeless graphs."""
    if g.m == 0:
        return 0
    return max(len(ns) for ns in g.neighbours)
