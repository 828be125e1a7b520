"""Exact brute-force counters that serve as ground truth everywhere else.

Three counters: list colourings of an instance against a colour graph, the
antiferromagnetic two-spin partition function, and model counts for CNF
formulas whose clauses carry at most one positive and one negative literal.

Counts are exact Python ints; partition function values are exact Fractions.
No floating point anywhere.  All counters are deterministic and independent
of internal iteration order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graphs import ColourGraph, Instance, InstanceGraph

UNIT_POS = "p"
UNIT_NEG = "n"
IMP = "i"

Clause = tuple  # ("p", v) | ("n", v) | ("i", a, b) meaning a implies b


def unit_pos(v: int) -> Clause:
    return (UNIT_POS, v)


def unit_neg(v: int) -> Clause:
    return (UNIT_NEG, v)


def implies(a: int, b: int) -> Clause:
    return (IMP, a, b)


@dataclass(frozen=True)
class ImplicationFormula:
    """CNF with unit clauses and implications only (one positive and one
    negative literal per clause, at most)."""

    var_count: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.var_count < 0:
            raise ValueError("variable count must be non-negative")
        for cl in self.clauses:
            if cl[0] in (UNIT_POS, UNIT_NEG):
                if len(cl) != 2:
                    raise ValueError(f"malformed unit clause {cl!r}")
                vs = (cl[1],)
            elif cl[0] == IMP:
                if len(cl) != 3:
                    raise ValueError(f"malformed implication {cl!r}")
                vs = (cl[1], cl[2])
            else:
                raise ValueError(f"unknown clause tag {cl[0]!r}")
            for v in vs:
                if not (1 <= v <= self.var_count):
                    raise ValueError(f"variable {v} out of range in {cl!r}")


def count_list_hcol(h: ColourGraph, inst: Instance) -> int:
    """Exact number of list colourings of inst against h.

    A colouring assigns each vertex a colour from its list such that the two
    endpoint colours of every edge are adjacent in h.  The search splits the
    remaining graph into connected components after every branch and
    multiplies component counts, so counts far beyond enumeration scale stay
    exact; the recursion itself never guesses.
    """
    if inst.colour_count != h.n:
        raise ValueError(
            f"instance expects {inst.colour_count} colours, target has {h.n}"
        )
    rows = h.row_masks
    masks = {}
    for v in inst.g.vertices:
        mask = 0
        for c in inst.lists[v - 1]:
            mask |= 1 << (c - 1)
        masks[v] = mask
    nbrs = inst.g.neighbours

    def split(active: dict[int, int]) -> int:
        total = 1
        todo = sorted(active)
        seen: set[int] = set()
        for start in todo:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for u in nbrs[v - 1]:
                    if u in active and u not in comp:
                        comp.add(u)
                        queue.append(u)
            seen |= comp
            total *= count_component(comp, active)
            if total == 0:
                return 0
        return total

    def count_component(comp: set[int], masks_in: dict[int, int]) -> int:
        for v in comp:
            if masks_in[v] == 0:
                return 0
        if len(comp) == 1:
            (v,) = comp
            return masks_in[v].bit_count()
        # branch on the vertex with the most neighbours inside the component
        branch = min(comp, key=lambda v: (-sum(1 for u in nbrs[v - 1] if u in comp), v))
        rest = comp - {branch}
        total = 0
        mask = masks_in[branch]
        c = 1
        while mask:
            if mask & 1:
                sub = {}
                alive = True
                for u in rest:
                    mu = masks_in[u]
                    if branch in nbrs[u - 1]:
                        mu &= rows[c - 1]
                        if mu == 0:
                            alive = False
                            break
                    sub[u] = mu
                if alive:
                    total += split(sub)
            mask >>= 1
            c += 1
        return total

    return split(masks)


def ising_partition(g: InstanceGraph, lam: Fraction) -> Fraction:
    """Exact two-spin partition function with an antiferromagnetic weight.

    Sums over all assignments of +-1 spins to the vertices; each edge whose
    endpoints agree contributes a factor lam, all other edges contribute 1.
    Only 0 < lam < 1 is accepted.
    """
    lam = Fraction(lam)
    if not (0 < lam < 1):
        raise ValueError(f"weight must satisfy 0 < lam < 1, got {lam}")
    total = Fraction(1)
    seen: set[int] = set()
    for start in g.vertices:
        if start in seen:
            continue
        comp = [start]
        queue = deque([start])
        members = {start}
        while queue:
            v = queue.popleft()
            for u in g.neighbours[v - 1]:
                if u not in members:
                    members.add(u)
                    comp.append(u)
                    queue.append(u)
        seen |= members
        comp.sort()
        index = {v: i for i, v in enumerate(comp)}
        comp_edges = [
            (index[u], index[v]) for u, v in g.edges if u in members and v in members
        ]
        # histogram of monochromatic-edge counts over all spin assignments
        hist = [0] * (len(comp_edges) + 1)
        for spins in range(1 << len(comp)):
            mono = 0
            for a, b in comp_edges:
                if ((spins >> a) ^ (spins >> b)) & 1 == 0:
                    mono += 1
            hist[mono] += 1
        z = Fraction(0)
        for mono, cnt in enumerate(hist):
            if cnt:
                z += cnt * lam**mono
        total *= z
    return total


def count_1p1n(f: ImplicationFormula) -> int:
    """Exact number of satisfying 0/1 assignments of an implication formula.

    Unit clauses are propagated up front; the remaining variables split into
    components linked by implications, and each component is counted by
    branch-and-propagate search.  Variables touched by no clause double the
    count.
    """
    n = f.var_count
    fwd: list[list[int]] = [[] for _ in range(n + 1)]  # a -> b edges
    rev: list[list[int]] = [[] for _ in range(n + 1)]
    assign: list[int | None] = [None] * (n + 1)

    def propagate(v: int, val: bool, trail: list[int]) -> bool:
        """Assign v := val and push consequences; False on conflict."""
        stack = [(v, val)]
        while stack:
            x, xval = stack.pop()
            if assign[x] is not None:
                if assign[x] != xval:
                    return False
                continue
            assign[x] = xval
            trail.append(x)
            if xval:
                for y in fwd[x]:
                    stack.append((y, True))
            else:
                for y in rev[x]:
                    stack.append((y, False))
        return True

    units: list[tuple[int, bool]] = []
    for cl in f.clauses:
        if cl[0] == UNIT_POS:
            units.append((cl[1], True))
        elif cl[0] == UNIT_NEG:
            units.append((cl[1], False))
        else:
            _, a, b = cl
            fwd[a].append(b)
            rev[b].append(a)

    trail: list[int] = []
    for v, val in units:
        if not propagate(v, val, trail):
            return 0

    # components over still-unassigned variables, linked by implications
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for v in range(1, n + 1):
        if assign[v] is not None or v in comp_of:
            continue
        comp = [v]
        comp_of[v] = len(comps)
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in fwd[x] + rev[x]:
                if assign[y] is None and y not in comp_of:
                    comp_of[y] = len(comps)
                    comp.append(y)
                    queue.append(y)
        comp.sort()
        comps.append(comp)

    def count_component(comp: list[int]) -> int:
        v = next((x for x in comp if assign[x] is None), None)
        if v is None:
            return 1
        total = 0
        for val in (False, True):
            sub_trail: list[int] = []
            if propagate(v, val, sub_trail):
                total += count_component(comp)
            for x in sub_trail:
                assign[x] = None
        return total

    total = 1
    for comp in comps:
        total *= count_component(comp)
        if total == 0:
            return 0
    return total
