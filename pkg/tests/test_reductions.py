import itertools
import random

import pytest

from helpers import enumerate_list_colourings, random_lists
from listhom import patterns
from listhom.graphs import ColourGraph, Instance, InstanceGraph
from listhom.oracles import count_1p1n, count_list_hcol
from listhom.recognizer import (
    StaircaseForm,
    find_staircase_adjacency,
    find_staircase_biadjacency,
)
from listhom.reductions import (
    build_staircase_encoding,
    decode_assignment,
    encode_colouring,
    reduce_listhcol_to_1p1n,
    reduce_p4_to_p3star,
)

K2 = InstanceGraph.from_edges(2, [(1, 2)])

# 6-vertex bipartite permutation target with a strict staircase biadjacency
H6 = ColourGraph.from_edges(6, [(1, 4), (2, 4), (2, 5), (3, 4), (3, 5), (3, 6)])


def encoding_for(h):
    form = find_staircase_biadjacency(h)
    if form is None:
        form = find_staircase_adjacency(h)
    assert form is not None
    return build_staircase_encoding(h, form)


# --- encoding assembly ---

def test_encoding_p4_block_matrix():
    enc = encoding_for(patterns.P4)
    assert enc.mode == "bipartite" and enc.q == 4
    assert enc.r_order == (1, 3, 2, 4)
    assert enc.c_order == (2, 4, 1, 3)
    assert enc.matrix == ((1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 1))


def test_encoding_reflexive_path():
    enc = encoding_for(patterns.P3_STAR)
    assert enc.mode == "reflexive" and enc.q == 3
    assert enc.r_order == enc.c_order == (1, 2, 3)
    assert enc.alpha == (1, 1, 2) and enc.beta == (2, 3, 3)


def test_encoding_single_edge():
    enc = encoding_for(patterns.path(2))
    assert enc.q == 2
    assert enc.matrix == ((1, 0), (0, 1))
    assert enc.alpha == (1, 2) and enc.beta == (1, 2)


def test_encoding_rejects_non_certifying_form():
    fake = StaircaseForm("adjacency", (1, 2, 3), (1, 2, 3), (1, 1, 2), (2, 3, 3))
    with pytest.raises(ValueError):
        build_staircase_encoding(patterns.CLAW, fake)


# --- the formula compiler ---

def test_formula_spot_counts():
    enc3 = encoding_for(patterns.P3_STAR)
    inst = Instance.with_full_lists(K2, 3)
    formula, _ = reduce_listhcol_to_1p1n(enc3, inst)
    assert count_1p1n(formula) == 7

    enc4 = encoding_for(patterns.P4)
    inst = Instance.with_full_lists(K2, 4)
    formula, _ = reduce_listhcol_to_1p1n(enc4, inst)
    assert count_1p1n(formula) == 6

    lone = InstanceGraph.from_edges(1, [])
    formula, _ = reduce_listhcol_to_1p1n(enc3, Instance.with_full_lists(lone, 3))
    assert count_1p1n(formula) == 3


def test_formula_clause_counts():
    enc = encoding_for(patterns.P3_STAR)
    q = enc.q
    inst = Instance(K2, (frozenset({1, 2}), frozenset({3})), 3)
    formula, _ = reduce_listhcol_to_1p1n(enc, inst)
    forbidden = sum(3 - len(s) for s in inst.lists)
    assert len(formula.clauses) == (q + 2) * 2 + 2 * q * 1 + forbidden

    enc4 = encoding_for(patterns.P4)
    g = InstanceGraph.from_edges(3, [(1, 2), (2, 3)])
    inst = Instance(g, (frozenset({1}), frozenset({2, 4}), frozenset({1, 3})), 4)
    formula, _ = reduce_listhcol_to_1p1n(enc4, inst)
    forbidden = sum(4 - len(s) for s in inst.lists)
    assert len(formula.clauses) == (enc4.q + 2) * 3 + 2 * enc4.q * 2 + forbidden


def test_formula_nonbipartite_instance_is_unsatisfiable():
    enc = encoding_for(patterns.P4)
    tri = InstanceGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    formula, _ = reduce_listhcol_to_1p1n(enc, Instance.with_full_lists(tri, 4))
    assert count_1p1n(formula) == 0


def test_formula_arity_mismatch():
    enc = encoding_for(patterns.P3_STAR)
    with pytest.raises(ValueError):
        reduce_listhcol_to_1p1n(enc, Instance.with_full_lists(K2, 4))


def _random_cross_check(h, seed, trials=25):
    rng = random.Random(seed)
    enc = encoding_for(h)
    for _ in range(trials):
        m = rng.randint(1, 7)
        edges = [(u, v) for u in range(1, m + 1) for v in range(u + 1, m + 1)
                 if rng.random() < 0.4]
        g = InstanceGraph.from_edges(m, edges)
        inst = Instance(g, random_lists(rng, m, h.n, 0.65), h.n)
        formula, vmap = reduce_listhcol_to_1p1n(enc, inst)
        assert count_1p1n(formula) == count_list_hcol(h, inst)


def test_formula_counts_match_oracle():
    _random_cross_check(patterns.P4, 41)
    _random_cross_check(patterns.P3_STAR, 42)
    _random_cross_check(H6, 43, trials=15)
    _random_cross_check(patterns.path(4, reflexive=True), 44, trials=15)


# --- decoding ---

def test_decode_examples():
    enc = encoding_for(patterns.P3_STAR)
    lone = InstanceGraph.from_edges(1, [])
    _, vmap = reduce_listhcol_to_1p1n(enc, Instance.with_full_lists(lone, 3))
    assert decode_assignment(enc, vmap, (1, 0, 0, 0)) == (1,)
    assert decode_assignment(enc, vmap, (1, 1, 0, 0)) == (2,)
    with pytest.raises(ValueError):
        decode_assignment(enc, vmap, (1, 1, 1, 1))  # end of chain must be 0
    with pytest.raises(ValueError):
        decode_assignment(enc, vmap, (1, 0, 1, 0))  # not monotone


def test_decode_bijection_small():
    # enumerate every satisfying assignment and decode it; the set of decoded
    # colourings must be exactly the valid colourings, each hit once
    h = patterns.P4
    enc = encoding_for(h)
    g = InstanceGraph.from_edges(3, [(1, 2), (2, 3)])
    inst = Instance(g, (frozenset({1, 2}), frozenset({2, 4}), frozenset({1, 3})), 4)
    formula, vmap = reduce_listhcol_to_1p1n(enc, inst)
    decoded = []
    for bits in itertools.product((0, 1), repeat=formula.var_count):
        ok = True
        for cl in formula.clauses:
            if cl[0] == "p":
                ok = bits[cl[1] - 1] == 1
            elif cl[0] == "n":
                ok = bits[cl[1] - 1] == 0
            else:
                ok = not (bits[cl[1] - 1] == 1 and bits[cl[2] - 1] == 0)
            if not ok:
                break
        if ok:
            decoded.append(decode_assignment(enc, vmap, bits))
    valid = enumerate_list_colourings(h, inst)
    assert sorted(decoded) == sorted(valid)
    assert len(set(decoded)) == len(decoded)


def test_encode_decode_round_trip():
    rng = random.Random(45)
    for h in (patterns.P4, patterns.P3_STAR, H6):
        enc = encoding_for(h)
        for _ in range(10):
            m = rng.randint(1, 5)
            edges = [(u, v) for u in range(1, m + 1) for v in range(u + 1, m + 1)
                     if rng.random() < 0.4]
            g = InstanceGraph.from_edges(m, edges)
            inst = Instance(g, random_lists(rng, m, h.n, 0.7), h.n)
            _, vmap = reduce_listhcol_to_1p1n(enc, inst)
            for colouring in itertools.islice(
                    enumerate_list_colourings(h, inst), 10):
                bits = encode_colouring(enc, vmap, colouring)
                assert decode_assignment(enc, vmap, bits) == tuple(colouring)


# --- 4-path to looped-3-path ---

def test_p4_reduction_examples():
    inst, mult = reduce_p4_to_p3star(K2)
    assert mult == 2
    assert count_list_hcol(patterns.P3_STAR, inst) == 3
    assert count_list_hcol(patterns.P4, Instance.with_full_lists(K2, 4)) == 6

    lone = InstanceGraph.from_edges(1, [])
    inst, mult = reduce_p4_to_p3star(lone)
    assert mult == 2 and count_list_hcol(patterns.P3_STAR, inst) == 2

    pair = InstanceGraph.from_edges(4, [(1, 2), (3, 4)])
    inst, mult = reduce_p4_to_p3star(pair)
    assert mult == 4
    assert mult * count_list_hcol(patterns.P3_STAR, inst) == 36


def test_p4_reduction_non_bipartite():
    tri = InstanceGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    inst, mult = reduce_p4_to_p3star(tri)
    assert mult == 1 and count_list_hcol(patterns.P3_STAR, inst) == 0
    assert count_list_hcol(patterns.P4, Instance.with_full_lists(tri, 4)) == 0
