"""Command-line front end.

Commands: classify, count, ising, count-sat, gadget, reduce-sat,
reduce-ising, selftest.  Exit codes: 0 success, 1 verification mismatch,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import patterns
from .formats import (
    ParseError,
    parse_formula,
    parse_fraction,
    parse_graph,
    parse_h,
    parse_instance,
    serialise_formula,
    serialise_instance,
)
from .gadgets import (
    build_symmetrized,
    det2,
    entrywise_pow,
    gadget_catalog,
    interaction_matrix,
    interaction_matrix_bruteforce,
    path_gadget_graph,
    reduce_ising_to_listhcol,
    thicken,
)
from .graphs import Instance, InstanceGraph, reflexivity_status
from .oracles import count_1p1n, count_list_hcol, ising_partition
from .recognizer import (
    CompleteBipartiteIrreflexive,
    CompleteReflexive,
    Excluded,
    ExcludedWitness,
    Hardness,
    MixedLoops,
    Staircase,
    classify,
    find_induced_embedding,
    find_staircase_adjacency,
    find_staircase_biadjacency,
    witness_pattern,
)
from .reductions import build_staircase_encoding, reduce_listhcol_to_1p1n

_CLASS_NAMES = {
    Hardness.POLYTIME: "polytime",
    Hardness.BIS_EQUIVALENT: "bis_equivalent",
    Hardness.SAT_EQUIVALENT: "sat_equivalent",
}


def _certificate_json(reason) -> dict:
    if isinstance(reason, CompleteReflexive):
        return {"type": "complete_reflexive"}
    if isinstance(reason, CompleteBipartiteIrreflexive):
        return {"type": "complete_bipartite_irreflexive"}
    if isinstance(reason, MixedLoops):
        return {"type": "loop_edge", "unlooped": reason.unlooped, "looped": reason.looped}
    if isinstance(reason, Staircase):
        f = reason.form
        return {
            "type": "staircase",
            "kind": f.kind,
            "row_order": list(f.row_order),
            "col_order": list(f.col_order),
            "alpha": list(f.alpha),
            "beta": list(f.beta),
        }
    if isinstance(reason, Excluded):
        w = reason.witness
        return {
            "type": "excluded_subgraph",
            "kind": w.kind,
            "length": w.length,
            "embedding": list(w.embedding),
        }
    raise AssertionError(f"unknown certificate {reason!r}")


def _result_json(res) -> dict:
    out = {
        "class": _CLASS_NAMES[res.klass],
        "degree_threshold": res.degree_threshold,
        "vertices": sorted(res.vertices),
        "certificate": _certificate_json(res.reason),
    }
    if res.per_component:
        out["components"] = [_result_json(sub) for sub in res.per_component]
    return out


def _print_certificate(reason, indent: str = "") -> None:
    cert = _certificate_json(reason)
    parts = [f"{k}={v}" for k, v in cert.items() if k != "type"]
    print(f"{indent}certificate: {cert['type']}" + ("  " + " ".join(parts) if parts else ""))


def cmd_classify(args) -> int:
    h = parse_h(Path(args.h_file).read_text())
    res = classify(h)
    if args.json:
        print(json.dumps(_result_json(res), indent=2))
        return 0
    print(f"class: {_CLASS_NAMES[res.klass]}")
    print(f"degree_threshold: {res.degree_threshold}")
    _print_certificate(res.reason)
    for sub in res.per_component:
        print(f"component {sorted(sub.vertices)}: {_CLASS_NAMES[sub.klass]}"
              f" threshold={sub.degree_threshold}")
        _print_certificate(sub.reason, indent="  ")
    return 0


def cmd_count(args) -> int:
    h = parse_h(Path(args.h_file).read_text())
    inst = parse_instance(Path(args.instance_file).read_text(), h.n)
    print(count_list_hcol(h, inst))
    return 0


def cmd_ising(args) -> int:
    g = parse_graph(Path(args.g_file).read_text())
    lam = parse_fraction(args.lam)
    print(ising_partition(g, lam))
    return 0


def cmd_count_sat(args) -> int:
    f = parse_formula(Path(args.formula_file).read_text())
    print(count_1p1n(f))
    return 0


_WITNESS_KINDS = {
    "x3": "X3", "x2": "X2", "t2": "T2",
    "claw": "Claw", "net": "Net", "s3": "S3",
}


def _explicit_witness(h, selector: str) -> ExcludedWitness:
    selector = selector.lower()
    if selector.startswith("cycle"):
        length = int(selector[len("cycle"):])
        status = reflexivity_status(h)
        if status == "irreflexive":
            kind = "CycleNe4"
        elif status == "reflexive":
            kind = "CycleGe4"
        else:
            raise ValueError("cycle witnesses need a purely reflexive or irreflexive target")
    elif selector in _WITNESS_KINDS:
        kind = _WITNESS_KINDS[selector]
        length = None
    else:
        raise ValueError(f"unknown witness kind {selector!r}")
    pattern = witness_pattern(kind, length)
    emb = find_induced_embedding(pattern, h)
    if emb is None:
        raise ValueError(f"target contains no induced {kind}"
                         + (f" of length {length}" if length else ""))
    return ExcludedWitness(kind, length, emb)


def _gadget_witness(h, selector: str | None) -> ExcludedWitness:
    if selector is not None:
        return _explicit_witness(h, selector)
    res = classify(h)
    if res.klass is not Hardness.SAT_EQUIVALENT:
        raise ValueError(f"no witness: target classifies as {_CLASS_NAMES[res.klass]}")
    reason = res.reason
    if not isinstance(reason, Excluded):
        raise ValueError(
            "no path-gadget witness: the hard core is a loop edge; "
            "pass --witness to pick a pattern inside a homogeneous part"
        )
    return reason.witness


def _fmt_matrix(m) -> str:
    return f"[[{m[0][0]}, {m[0][1]}], [{m[1][0]}, {m[1][1]}]]"


def cmd_gadget(args) -> int:
    h = parse_h(Path(args.h_file).read_text())
    witness = _gadget_witness(h, args.witness)
    entry = gadget_catalog(witness)
    dprime, d = interaction_matrix(h, entry.gadget)
    checks = []
    checks.append(("D' matches catalog", dprime == entry.expected_dprime))
    checks.append(("det D' = 1", det2(dprime) == 1))
    checks.append(("det D = -1", det2(d) == -1))
    bf = interaction_matrix_bruteforce(h, path_gadget_graph(h, entry.gadget))
    checks.append(("brute force agrees with D", bf == d))
    _, gg = build_symmetrized(h, witness)
    checks.append(("D* symmetric", gg.matrix[0][1] == gg.matrix[1][0]
                   and gg.matrix[0][0] == gg.matrix[1][1]))
    checks.append(("det D* < 0", det2(gg.matrix) < 0))
    bf_star = interaction_matrix_bruteforce(h, gg)
    checks.append(("brute force agrees with D*", bf_star == gg.matrix))

    report = {
        "witness": {"kind": witness.kind, "length": witness.length,
                    "embedding": list(witness.embedding)},
        "gadget": [list(p) for p in entry.gadget.pairs],
        "terminals": list(entry.terminals),
        "dprime": [list(r) for r in dprime],
        "d": [list(r) for r in d],
        "dstar": [list(r) for r in gg.matrix],
    }
    if args.t is not None:
        gt = thicken(h, gg, entry.cond_pair, args.t)
        expected = entrywise_pow(gg.matrix, 2**args.t)
        bf_t = interaction_matrix_bruteforce(h, gt)
        checks.append((f"thickened matrix is the entrywise 2^{args.t} power",
                       bf_t == expected and gt.matrix == expected))
        report["cond_pair"] = list(entry.cond_pair)
        report["t"] = args.t
        report["dstar_t"] = [list(r) for r in gt.matrix]
        report["thickened_vertices"] = gt.m
    ok = all(flag for _, flag in checks)
    report["checks"] = {name: flag for name, flag in checks}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"witness: {witness.kind}"
              + (f"({witness.length})" if witness.length else "")
              + f" embedding={list(witness.embedding)}")
        print(f"gadget: {[tuple(p) for p in entry.gadget.pairs]}")
        print(f"terminals: {entry.terminals}")
        print(f"D' = {_fmt_matrix(dprime)}")
        print(f"D  = {_fmt_matrix(d)}")
        print(f"D* = {_fmt_matrix(gg.matrix)}")
        if args.t is not None:
            print(f"D*_{args.t} = {_fmt_matrix(report['dstar_t'])}"
                  f"  ({report['thickened_vertices']} vertices)")
        for name, flag in checks:
            print(f"{'ok' if flag else 'FAIL'} {name}")
    return 0 if ok else 1


def cmd_reduce_sat(args) -> int:
    h = parse_h(Path(args.h_file).read_text())
    inst = parse_instance(Path(args.instance_file).read_text(), h.n)
    status = reflexivity_status(h)
    form = None
    if status == "irreflexive":
        form = find_staircase_biadjacency(h)
    elif status == "reflexive":
        form = find_staircase_adjacency(h)
    if form is None:
        raise ValueError("target has no staircase certificate; reduction unavailable")
    enc = build_staircase_encoding(h, form)
    formula, vmap = reduce_listhcol_to_1p1n(enc, inst)
    out = Path(args.out)
    out.write_text(serialise_formula(formula))
    sidecar = {
        "mode": enc.mode,
        "q": enc.q,
        "r_order": list(enc.r_order),
        "c_order": list(enc.c_order),
        "alpha": list(enc.alpha),
        "beta": list(enc.beta),
        "sides": list(vmap.sides),
        "variable_numbering": "var(u, i) = (u-1)*(q+1) + i + 1 for 0 <= i <= q",
        "variables": vmap.var_count,
        "clauses": len(formula.clauses),
    }
    out.with_suffix(out.suffix + ".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    print(f"wrote {out} ({vmap.var_count} variables, {len(formula.clauses)} clauses)")
    return 0


def cmd_reduce_ising(args) -> int:
    g = parse_graph(Path(args.g_file).read_text())
    h = parse_h(Path(args.h_file).read_text())
    witness = _gadget_witness(h, args.witness)
    entry, gg = build_symmetrized(h, witness)
    if args.t is not None:
        gg = thicken(h, gg, entry.cond_pair, args.t)
    inst, lam, scale = reduce_ising_to_listhcol(g, gg)
    out = Path(args.out)
    out.write_text(serialise_instance(inst))
    sidecar = {
        "lambda": str(lam),
        "scale": str(scale),
        "original_vertices": g.m,
        "original_edges": len(g.edges),
        "witness": {"kind": witness.kind, "length": witness.length,
                    "embedding": list(witness.embedding)},
        "gadget_matrix": [list(r) for r in gg.matrix],
        "t": args.t,
        "identity": "count(instance) = scale * Z_lambda(g)",
    }
    out.with_suffix(out.suffix + ".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    print(f"wrote {out} (lambda={lam}, scale={scale})")
    return 0


# ---------------------------------------------------------------------------
# selftest

def _selftest_checks(seed: int):
    rng = random.Random(seed)

    def pattern_witness(kind, length, pat):
        return ExcludedWitness(kind, length, tuple(range(1, pat.n + 1)))

    catalog_cases = [
        ("X3", None, patterns.X3, ((2, 3), (3, 5))),
        ("X2", None, patterns.X2, ((5, 8), (8, 13))),
        ("T2", None, patterns.T2, ((5, 7), (7, 10))),
        ("CycleNe4", 3, patterns.cycle(3), ((2, 1), (1, 1))),
        ("CycleNe4", 5, patterns.cycle(5), ((2, 1), (1, 1))),
        ("CycleNe4", 7, patterns.cycle(7), ((2, 1), (1, 1))),
        ("CycleNe4", 6, patterns.cycle(6), ((1, 2), (1, 3))),
        ("CycleNe4", 8, patterns.cycle(8), ((1, 2), (1, 3))),
        ("Claw", None, patterns.CLAW, ((2, 3), (3, 5))),
        ("Net", None, patterns.NET, ((2, 3), (3, 5))),
        ("S3", None, patterns.S3, ((1, 1), (1, 2))),
        ("CycleGe4", 4, patterns.cycle(4, reflexive=True), ((1, 2), (1, 3))),
        ("CycleGe4", 5, patterns.cycle(5, reflexive=True), ((1, 2), (1, 3))),
        ("CycleGe4", 6, patterns.cycle(6, reflexive=True), ((1, 2), (1, 3))),
    ]

    for kind, length, pat, want in catalog_cases:
        w = pattern_witness(kind, length, pat)
        entry = gadget_catalog(w)
        dprime, d = interaction_matrix(pat, entry.gadget)
        label = kind + (f"({length})" if length else "")
        yield (f"catalog {label} D'", dprime == want == entry.expected_dprime)
        yield (f"catalog {label} determinants", det2(dprime) == 1 and det2(d) == -1)
        bf = interaction_matrix_bruteforce(pat, path_gadget_graph(pat, entry.gadget))
        yield (f"catalog {label} brute force", bf == d)
        _, gg = build_symmetrized(pat, w)
        sym = gg.matrix[0][0] == gg.matrix[1][1] and gg.matrix[0][1] == gg.matrix[1][0]
        yield (f"catalog {label} D* shape", sym and det2(gg.matrix) < 0)
        yield (f"catalog {label} D* brute force",
               interaction_matrix_bruteforce(pat, gg) == gg.matrix)
        for t in (0, 1):
            gt = thicken(pat, gg, entry.cond_pair, t)
            ok = interaction_matrix_bruteforce(pat, gt) == entrywise_pow(gg.matrix, 2**t)
            yield (f"catalog {label} thicken t={t}", ok)

    k2 = InstanceGraph.from_edges(2, [(1, 2)])
    yield ("oracle K2' count", count_list_hcol(
        patterns.K2_PRIME, Instance.with_full_lists(k2, 2)) == 3)
    yield ("oracle looped-3-path count", count_list_hcol(
        patterns.P3_STAR, Instance.with_full_lists(k2, 3)) == 7)
    yield ("oracle two-spin value", ising_partition(k2, Fraction(9, 10)) == Fraction(19, 5))
    from .oracles import ImplicationFormula, implies, unit_pos
    yield ("oracle chain formula", count_1p1n(
        ImplicationFormula(2, (unit_pos(1), implies(2, 1)))) == 2)

    fixtures = [
        (patterns.K2_PRIME, Hardness.SAT_EQUIVALENT, 6),
        (patterns.TWO_WRENCH, Hardness.SAT_EQUIVALENT, 6),
        (patterns.P4, Hardness.BIS_EQUIVALENT, 6),
        (patterns.P3_STAR, Hardness.BIS_EQUIVALENT, 6),
        (patterns.complete(5, reflexive=True), Hardness.POLYTIME, None),
        (patterns.cycle(4), Hardness.POLYTIME, None),
        (patterns.cycle(6), Hardness.SAT_EQUIVALENT, 3),
        (patterns.CLAW, Hardness.SAT_EQUIVALENT, 3),
    ]
    for idx, (h, klass, thr) in enumerate(fixtures):
        res = classify(h)
        yield (f"classification fixture {idx + 1}",
               res.klass is klass and res.degree_threshold == thr)

    for trial in range(3):
        m = rng.randint(2, 5)
        edges = [(u, v) for u in range(1, m + 1) for v in range(u + 1, m + 1)
                 if rng.random() < 0.5]
        g = InstanceGraph.from_edges(m, edges)
        w = pattern_witness("X3", None, patterns.X3)
        _, gg = build_symmetrized(patterns.X3, w)
        inst, lam, scale = reduce_ising_to_listhcol(g, gg)
        ok = count_list_hcol(patterns.X3, inst) == scale * ising_partition(g, lam)
        yield (f"two-spin identity trial {trial + 1}", ok)

    for trial in range(3):
        m = rng.randint(1, 6)
        edges = [(u, v) for u in range(1, m + 1) for v in range(u + 1, m + 1)
                 if rng.random() < 0.4]
        g = InstanceGraph.from_edges(m, edges)
        lists = tuple(frozenset(c for c in range(1, 4) if rng.random() < 0.7)
                      for _ in range(m))
        inst = Instance(g, lists, 3)
        enc = build_staircase_encoding(
            patterns.P3_STAR, find_staircase_adjacency(patterns.P3_STAR))
        formula, _ = reduce_listhcol_to_1p1n(enc, inst)
        ok = count_1p1n(formula) == count_list_hcol(patterns.P3_STAR, inst)
        yield (f"formula identity trial {trial + 1}", ok)

    from .reductions import reduce_p4_to_p3star
    for trial in range(3):
        m = rng.randint(1, 6)
        sides = [rng.randint(0, 1) for _ in range(m)]
        edges = [(u, v) for u in range(1, m + 1) for v in range(u + 1, m + 1)
                 if sides[u - 1] != sides[v - 1] and rng.random() < 0.5]
        g = InstanceGraph.from_edges(m, edges)
        inst, mult = reduce_p4_to_p3star(g)
        lhs = count_list_hcol(patterns.P4, Instance.with_full_lists(g, 4))
        ok = lhs == mult * count_list_hcol(patterns.P3_STAR, inst)
        yield (f"4-path identity trial {trial + 1}", ok)

    from .formats import parse_formula as pf, parse_h as ph, serialise_h
    yield ("format round trip", ph(serialise_h(patterns.X3)) == patterns.X3
           and pf("f 2\np 1\ni 2 1\n").clauses == (("p", 1), ("i", 2, 1)))


def cmd_selftest(args) -> int:
    failures = 0
    for name, ok in _selftest_checks(args.seed):
        print(f"{'ok' if ok else 'FAIL'} {name}")
        failures += 0 if ok else 1
    print(f"selftest: {'pass' if failures == 0 else f'{failures} failure(s)'}")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="listhom",
        description="List-homomorphism counting toolkit: classification, "
                    "gadgets, reductions and exact oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a target graph")
    p.add_argument("h_file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="count list colourings of an instance")
    p.add_argument("h_file")
    p.add_argument("instance_file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ising", help="exact two-spin partition function")
    p.add_argument("g_file")
    p.add_argument("--lambda", dest="lam", required=True, metavar="P/Q")
    p.set_defaults(func=cmd_ising)

    p = sub.add_parser("count-sat", help="count models of an implication formula")
    p.add_argument("formula_file")
    p.set_defaults(func=cmd_count_sat)

    p = sub.add_parser("gadget", help="build and verify the gadget for a target")
    p.add_argument("h_file")
    p.add_argument("--witness", help="x3|x2|t2|claw|net|s3|cycle<L>")
    p.add_argument("--t", type=int, help="thickening level to verify")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("reduce-sat",
                       help="compile an instance to an implication formula")
    p.add_argument("h_file")
    p.add_argument("instance_file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce_sat)

    p = sub.add_parser("reduce-ising",
                       help="edge-replace a graph into a list instance")
    p.add_argument("g_file")
    p.add_argument("h_file")
    p.add_argument("--witness", help="x3|x2|t2|claw|net|s3|cycle<L>")
    p.add_argument("--t", type=int, help="thickening level")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce_ising)

    p = sub.add_parser("selftest", help="verify the catalog and the invariants")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
