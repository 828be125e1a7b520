"""Count-preserving compilers.

Two reductions live here.  The first turns a list-colouring instance over a
staircase-certified target into an implication-CNF formula whose satisfying
assignments are in bijection with the list colourings.  The second rewrites
4-path counting as list counting over the looped 3-path, exact up to a power
of two that tracks the mirror symmetry of each component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    ColourGraph,
    Instance,
    InstanceGraph,
    bipartition,
    instance_components,
)
from .oracles import ImplicationFormula, implies, unit_neg, unit_pos
from .recognizer import StaircaseForm, is_staircase


@dataclass(frozen=True)
class StaircaseEncoding:
    """A staircase arrangement of the target's full adjacency structure.

    In bipartite mode the q x q matrix is the block arrangement
    [[B, 0], [0, B^T]] of a staircase biadjacency matrix B, so both component
    orientations stay representable; in reflexive mode it is the permuted
    adjacency matrix itself.  r_order/c_order attach a colour to every row
    and column; alpha/beta are the per-row 1-blocks (None for all-zero rows).
    """

    mode: str
    q: int
    r_order: tuple[int, ...]
    c_order: tuple[int, ...]
    alpha: tuple[int | None, ...]
    beta: tuple[int | None, ...]
    matrix: tuple[tuple[int, ...], ...]
    colour_count: int


def build_staircase_encoding(h: ColourGraph, sf: StaircaseForm) -> StaircaseEncoding:
    """Assemble the encoding matrix from a certifying staircase form.

    Biadjacency forms produce the block matrix spanning all q colours;
    adjacency forms are taken as-is.  Rejects forms that do not certify h.
    """
    if not sf.certifies(h):
        raise ValueError("staircase form does not certify this target")
    if sf.kind == "biadjacency":
        r_order = sf.row_order + sf.col_order
        c_order = sf.col_order + sf.row_order
    else:
        r_order = sf.row_order
        c_order = sf.row_order
    matrix = tuple(
        tuple(1 if h.adjacent(r, c) else 0 for c in c_order) for r in r_order
    )
    bounds = is_staircase(matrix)
    if bounds is None:
        raise AssertionError("certifying form produced a non-staircase matrix")
    return StaircaseEncoding(
        "bipartite" if sf.kind == "biadjacency" else "reflexive",
        h.n,
        r_order,
        c_order,
        bounds[0],
        bounds[1],
        matrix,
        h.n,
    )


@dataclass(frozen=True)
class VariableMap:
    """Bijection between (vertex u, level i in 0..q) and variable indices,
    vertex-major: var(u, i) = (u-1)(q+1) + i + 1.

    sides records which colour order interprets each vertex (1 for rows,
    2 for columns; always 1 in reflexive mode).
    """

    q: int
    m: int
    sides: tuple[int, ...]

    @property
    def var_count(self) -> int:
        return self.m * (self.q + 1)

    def var(self, u: int, i: int) -> int:
        if not (1 <= u <= self.m and 0 <= i <= self.q):
            raise ValueError(f"no variable for vertex {u}, level {i}")
        return (u - 1) * (self.q + 1) + i + 1

    def vertex_level(self, x: int) -> tuple[int, int]:
        if not (1 <= x <= self.var_count):
            raise ValueError(f"variable {x} out of range")
        u, i = divmod(x - 1, self.q + 1)
        return u + 1, i


def reduce_listhcol_to_1p1n(
    enc: StaircaseEncoding, inst: Instance
) -> tuple[ImplicationFormula, VariableMap]:
    """Formula whose models are in bijection with the list colourings.

    Per vertex: a monotone chain x_0 = 1 >= x_1 >= ... >= x_q = 0 whose drop
    position selects the colour (x_i = 1 iff the colour sits strictly after
    level i in the vertex's order).  Per edge, oriented from the row side:
    level i of the first endpoint confines the second endpoint to the 1-block
    [alpha_i, beta_i].  Per missing list colour: a clause collapsing the
    corresponding drop position.

    In bipartite mode a non-bipartite instance has no colourings; the formula
    then carries a contradictory unit pair.
    """
    if inst.colour_count != enc.colour_count:
        raise ValueError("encoding and instance disagree on the colour count")
    q = enc.q
    g = inst.g
    if enc.mode == "bipartite":
        sides_sets = bipartition(g)
        if sides_sets is None:
            vmap = VariableMap(q, g.m, (1,) * g.m)
            clauses = (unit_pos(1), unit_neg(1))
            return ImplicationFormula(vmap.var_count, clauses), vmap
        v1, _ = sides_sets
        sides = tuple(1 if v in v1 else 2 for v in g.vertices)
    else:
        sides = (1,) * g.m
    vmap = VariableMap(q, g.m, sides)
    var = vmap.var

    clauses = []
    for u in g.vertices:
        clauses.append(unit_pos(var(u, 0)))
        clauses.append(unit_neg(var(u, q)))
        for j in range(1, q + 1):
            clauses.append(implies(var(u, j), var(u, j - 1)))
    for u, v in g.edges:
        if enc.mode == "bipartite" and sides[u - 1] == 2:
            u, v = v, u
        for i in range(1, q + 1):
            a, b = enc.alpha[i - 1], enc.beta[i - 1]
            if a is None:
                # a neighbourless row colour is impossible on any edge
                clauses.append(implies(var(u, i - 1), var(u, i)))
            else:
                clauses.append(implies(var(u, i - 1), var(v, a - 1)))
                clauses.append(implies(var(v, b), var(u, i)))
    for u in g.vertices:
        order = enc.r_order if sides[u - 1] == 1 else enc.c_order
        allowed = inst.lists[u - 1]
        for i in range(1, q + 1):
            if order[i - 1] not in allowed:
                clauses.append(implies(var(u, i - 1), var(u, i)))
    return ImplicationFormula(vmap.var_count, tuple(clauses)), vmap


def decode_assignment(
    enc: StaircaseEncoding, vmap: VariableMap, assignment
) -> tuple[int, ...]:
    """Colour per vertex from a satisfying assignment (sequence of 0/1
    indexed by variable - 1).  Rejects assignments violating the chains."""
    q = enc.q
    colours = []
    for u in range(1, vmap.m + 1):
        bits = [assignment[vmap.var(u, i) - 1] for i in range(q + 1)]
        j = sum(bits)
        if bits != [1] * j + [0] * (q + 1 - j) or bits[0] != 1 or bits[q] != 0:
            raise ValueError(f"vertex {u}: assignment violates the chain clauses")
        order = enc.r_order if vmap.sides[u - 1] == 1 else enc.c_order
        colours.append(order[j - 1])
    return tuple(colours)


def encode_colouring(
    enc: StaircaseEncoding, vmap: VariableMap, colouring
) -> tuple[int, ...]:
    """The assignment a colouring maps to; inverse of decode_assignment."""
    q = enc.q
    bits = []
    for u in range(1, vmap.m + 1):
        order = enc.r_order if vmap.sides[u - 1] == 1 else enc.c_order
        j = order.index(colouring[u - 1]) + 1
        bits.extend(1 if j > i else 0 for i in range(q + 1))
    return tuple(bits)


def reduce_p4_to_p3star(g: InstanceGraph) -> tuple[Instance, int]:
    """List instance over the looped 3-path whose count, times 2 per
    component, equals the number of 4-path colourings of g.

    Each component admits exactly two mirror orientations of the 4-path, and
    an isolated vertex has four path colours against two listed ones, so the
    multiplier is 2^(number of components).  Non-bipartite g has no 4-path
    colourings; a zero-count instance with multiplier 1 is returned.
    """
    sides = bipartition(g)
    if sides is None:
        empty = tuple(frozenset() for _ in range(g.m))
        return Instance(g, empty, 3), 1
    v1, _ = sides
    lists = tuple(
        frozenset((1, 2)) if v in v1 else frozenset((2, 3)) for v in g.vertices
    )
    return Instance(g, lists, 3), 2 ** len(instance_components(g))
