"""Command-line entry point: ``magic24 <subcommand> ...``.

Exit codes: 0 success (or magic), 1 verification failure, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import artifacts
from .artifacts import RunManifest, manifest_path_for
from .construct import construct_all
from .errors import Magic24Error
from .incidence import BUILDERS, IncidenceStructure, magic_rows, magic_sum, verify_labeling
from .labelings import (
    enumerate_parity_binary,
    parity_solutions_gf2,
    permute_trits,
    ternary_16cell,
)
from .solver import SearchConfig, solve
from .symmetry import (
    SymmetryGroup,
    automorphisms,
    canonical_forms_parallel,
    count_orbits,
    default_workers,
    symmetry_24cell,
)


def is_24cell(s: IncidenceStructure) -> bool:
    return s.n_vertices == 24 and s.n_cells == 24 and s.regularity == (6, 6) and s.has_coords


def group_for(s: IncidenceStructure, group_path=None) -> SymmetryGroup:
    if group_path:
        return SymmetryGroup.from_json(artifacts.read_json(group_path))
    if is_24cell(s):
        return symmetry_24cell(s)
    return automorphisms(s)


def _finish(manifest: RunManifest, outputs, where) -> None:
    for p in outputs:
        manifest.add_output(p)
    manifest.write(manifest_path_for(where))


# -- subcommands --------------------------------------------------------------

def cmd_gen_structure(args) -> int:
    s = BUILDERS[args.name]()
    m = RunManifest("gen-structure", {"name": args.name})
    out = artifacts.write_json(args.out, artifacts.structure_to_json(s))
    _finish(m, [out], out)
    print(f"{s.n_vertices} vertices, {s.n_cells} cells, magic sum {magic_sum(s)}")
    return 0


def cmd_parity_search(args) -> int:
    s = artifacts.load_structure(args.structure)
    m = RunManifest("parity-search", {"structure": args.structure, "workers": args.workers,
                                      "gf2_check": args.gf2_check})
    m.add_input(args.structure)
    result = enumerate_parity_binary(s, workers=args.workers)
    out = artifacts.write_json(args.out, result.to_json())
    _finish(m, [out], out)
    line = result.summary()
    if args.gf2_check:
        agree = parity_solutions_gf2(s) == frozenset(result.solutions)
        line += " gf2: " + ("agree" if agree else "DISAGREE")
        print(line)
        return 0 if agree else 1
    print(line)
    return 0


def cmd_ternary(args) -> int:
    s = artifacts.load_structure(args.structure)
    pi = tuple(int(c) for c in args.perm)
    if sorted(pi) != [0, 1, 2]:
        raise argparse.ArgumentTypeError(f"--perm must be a permutation of 012, got {args.perm}")
    t = permute_trits(ternary_16cell(s), pi)
    m = RunManifest("ternary", {"structure": args.structure, "perm": args.perm})
    m.add_input(args.structure)
    out = artifacts.write_json(args.out, artifacts.labeling_to_json(s.name, t))
    _finish(m, [out], out)
    print(" ".join(str(x) for x in t))
    return 0


def cmd_construct(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    m = RunManifest("construct", {"workers": args.workers})
    result = construct_all(workers=args.workers)
    s = BUILDERS["24cell"]()
    g = symmetry_24cell(s)
    n_orbits, reps = count_orbits(result.label_array(), g, workers=args.workers)
    lab_path = artifacts.write_jsonl(outdir / "labelings.jsonl",
                                     (x.to_json() for x in result.labelings))
    rep_path = artifacts.write_jsonl(outdir / "orbits.jsonl",
                                     ({"labels": list(r)} for r in reps))
    summary = {"raw": result.raw, "distinct": result.distinct, "orbits": n_orbits,
               "triples": result.triples_per_perm}
    sum_path = artifacts.write_json(outdir / "summary.json", summary)
    _finish(m, [lab_path, rep_path, sum_path], outdir)
    replay = np.array(artifacts.load_labelings(lab_path), dtype=np.int64)
    failures = int((~magic_rows(s, replay)).sum())
    print(f"raw={result.raw} distinct={result.distinct} orbits={n_orbits} failures={failures}")
    return 0 if failures == 0 else 1


def _labelings_and_group(args):
    s = artifacts.load_structure(args.structure)
    rows = artifacts.load_labelings(args.input)
    arr = np.array(rows, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != s.n_vertices:
        raise Magic24Error(f"labelings do not match {s.n_vertices} vertices")
    return s, arr, group_for(s, args.group)


def cmd_canonicalize(args) -> int:
    s, arr, g = _labelings_and_group(args)
    m = RunManifest("canonicalize", {"input": args.input, "structure": args.structure})
    m.add_input(args.input)
    canon = canonical_forms_parallel(arr, g, args.workers)
    out = artifacts.write_jsonl(args.out, ({"labels": [int(x) for x in r]} for r in canon))
    _finish(m, [out], out)
    print(f"canonicalized {len(canon)} labelings under a group of order {g.order}")
    return 0


def cmd_count_orbits(args) -> int:
    s, arr, g = _labelings_and_group(args)
    n, reps = count_orbits(arr, g, args.workers)
    if args.out:
        m = RunManifest("count-orbits", {"input": args.input, "structure": args.structure})
        m.add_input(args.input)
        out = artifacts.write_jsonl(args.out, ({"labels": list(r)} for r in reps))
        _finish(m, [out], out)
    print(f"labelings={len(arr)} group_order={g.order} orbits={n}")
    return 0


def cmd_group(args) -> int:
    s = artifacts.load_structure(args.structure)
    g = group_for(s)
    m = RunManifest("group", {"structure": args.structure})
    out = artifacts.write_json(args.out, g.to_json())
    _finish(m, [out], out)
    print(f"order={g.order}")
    return 0


def load_config(path) -> tuple:
    data = artifacts.read_json(path)
    try:
        ref = data["structure"]
        candidate = Path(path).parent / ref
        s = artifacts.load_structure(candidate if candidate.is_file() else ref)
        cfg = SearchConfig(
            target_sum=int(data["target_sum"]),
            node_budget=data.get("node_budget"),
            emit_limit=data.get("emit_limit"),
            symmetry_reduction=bool(data.get("symmetry_reduction", False)),
            prefix=tuple((int(v) - 1, int(x)) for v, x in data.get("prefix", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise artifacts.ParseError(f"{path}: bad solver config: {exc}") from exc
    return s, cfg


def cmd_solve(args) -> int:
    s, cfg = load_config(args.config)
    if args.budget is not None:
        cfg = SearchConfig(cfg.target_sum, args.budget, cfg.emit_limit,
                           cfg.symmetry_reduction, cfg.prefix)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    m = RunManifest("solve", {"config": args.config, "budget": args.budget, "resume": args.resume})
    m.add_input(args.config)
    previous, prior_nodes, resume = [], 0, None
    if args.resume:
        m.add_input(args.resume)
        ck = artifacts.read_json(args.resume)
        if ck.get("path") is None:
            raise artifacts.ParseError(f"{args.resume}: search already complete")
        resume = [(v - 1, x) for v, x in ck["path"]]
        prior_nodes = int(ck.get("nodes", 0))
        prev_file = Path(args.resume).parent / "labelings.jsonl"
        if prev_file.is_file():
            previous = [tuple(r["labels"]) for r in artifacts.read_jsonl(prev_file)]
    outcome = solve(s, cfg, resume=resume)
    labelings = previous + [tuple(x) for x in outcome.labelings]
    lab_path = artifacts.write_jsonl(outdir / "labelings.jsonl",
                                     ({"labels": list(x)} for x in labelings))
    nodes = prior_nodes + outcome.nodes_explored
    summary = {"nodes": nodes, "complete": outcome.complete, "count": len(labelings)}
    sum_path = artifacts.write_json(outdir / "summary.json", summary)
    ck_path = artifacts.write_json(outdir / "checkpoint.json", {
        "nodes": nodes,
        "path": None if outcome.complete else [[v + 1, x] for v, x in outcome.checkpoint],
    })
    _finish(m, [lab_path, sum_path, ck_path], outdir)
    print(f"nodes={nodes} complete={str(outcome.complete).lower()} count={len(labelings)}")
    return 0


def cmd_verify(args) -> int:
    s = artifacts.load_structure(args.structure)
    labels = artifacts.load_labeling(args.labeling)
    report = verify_labeling(s, labels)
    print(report.describe())
    return 0 if report.magic else 1


# -- parser -------------------------------------------------------------------

def positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="magic24", description="Magic labelings of the 24-cell.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def workers(sp):
        sp.add_argument("--workers", type=positive_int, default=default_workers(),
                        help="worker processes (default: $MAGIC24_WORKERS or 1)")

    def labeling_inputs(sp):
        sp.add_argument("input", help="labelings (.jsonl) or a single labeling file")
        sp.add_argument("--structure", default="24cell")
        sp.add_argument("--group", help="group file (default: generated for the structure)")
        workers(sp)

    sp = sub.add_parser("gen-structure", help="write a built-in structure")
    sp.add_argument("name", choices=sorted(BUILDERS))
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen_structure)

    sp = sub.add_parser("parity-search", help="brute-force the odd-parity binary labelings")
    sp.add_argument("--structure", default="24cell")
    sp.add_argument("--out", required=True)
    sp.add_argument("--gf2-check", action="store_true", help="cross-check with GF(2) elimination")
    workers(sp)
    sp.set_defaults(func=cmd_parity_search)

    sp = sub.add_parser("ternary", help="write the three-16-cell ternary labeling")
    sp.add_argument("--structure", default="24cell")
    sp.add_argument("--perm", default="012", help="image of trits 0,1,2, e.g. 120")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_ternary)

    sp = sub.add_parser("construct", help="build every mixed-radix magic labeling")
    sp.add_argument("--out", required=True, help="output directory")
    workers(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("canonicalize", help="canonical forms under the symmetry group")
    labeling_inputs(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_canonicalize)

    sp = sub.add_parser("count-orbits", help="count symmetry classes of labelings")
    labeling_inputs(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_count_orbits)

    sp = sub.add_parser("group", help="export the symmetry group as vertex permutations")
    sp.add_argument("--structure", default="24cell")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("solve", help="backtracking search from a config file")
    sp.add_argument("config")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--budget", type=positive_int, help="override node_budget")
    sp.add_argument("--resume", help="checkpoint.json of an earlier run")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check a labeling file against a structure")
    sp.add_argument("structure")
    sp.add_argument("labeling")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (Magic24Error, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
