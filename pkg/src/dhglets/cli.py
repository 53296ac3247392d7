"""Command-line interface.

Every command takes a seed (flag, else the DHG_SEED environment variable,
else 0) and stamps its output with a manifest — command, flags, seed, RNG
algorithm, tool version, and input digest — so any result can be reproduced
bit for bit in single-threaded mode.  JSON goes to stdout unless --out is
given; diagnostics go to stderr.  Exit codes: 0 ok, 2 bad flags, 3 input
parse errors, 4 violated algorithm preconditions.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classify import default_table, load_reference_numbering
from .core import ParseError, PreconditionError, read_file, write_file
from .count import (
    ALGORITHMS,
    SampleBudget,
    feature_vector_arc,
    feature_vector_node,
    run_algorithm,
)
from .generate import GenSpec, generate
from .profiles import cp_from_graph, similarity_matrix, snapshots
from .randomize import randomize
from .rng import RNG_ALGORITHM, STREAM_INPUT, STREAM_TRIAL, derive_seed

EXIT_OK = 0
EXIT_FLAGS = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4


def _flag_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_FLAGS


def _resolve_seed(args) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        seed = int(os.environ.get("DHG_SEED", "0"))
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return seed


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return "sha256:" + h.hexdigest()


def _manifest(command: str, args, seed: int, inputs) -> dict:
    flags = {
        k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not args
    }
    if inputs is None:
        digest = None
    elif isinstance(inputs, (list, tuple)):
        digest = [_digest(p) for p in inputs]
    else:
        digest = _digest(inputs)
    return {
        "command": command,
        "flags": flags,
        "seed": seed,
        "rng_algorithm": RNG_ALGORITHM,
        "version": __version__,
        "input_digest": digest,
    }


def _emit_json(payload: dict, out) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_sidecar_manifest(out, manifest: dict) -> None:
    Path(str(out) + ".manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )


def _load_table(args):
    table = default_table()
    class_map = getattr(args, "class_map", None)
    if class_map:
        table = table.with_reference_numbering(load_reference_numbering(class_map))
    return table


def _class_entries(table, counts, stds=None) -> list:
    entries = []
    for cls in range(1, len(counts) + 1):
        value = counts[cls - 1]
        entry = {
            "canonical_pattern": table.pattern_string(cls),
            "internal_index": cls,
            "paper_index": table.reference_of(cls),
            "count": int(value) if float(value).is_integer() else float(value),
        }
        if stds is not None:
            entry["std"] = float(stds[cls - 1])
        entries.append(entry)
    return entries


def cmd_count(args) -> int:
    seed = _resolve_seed(args)
    if args.trials < 1:
        return _flag_error("--trials must be at least 1")
    if args.threads < 1:
        return _flag_error("--threads must be at least 1")
    table = _load_table(args)
    G = read_file(args.input)
    sampling = args.algo != "exact"
    if sampling:
        if args.q is None:
            return _flag_error(f"--q is required for algorithm {args.algo!r}")
        if args.q <= 0:
            return _flag_error("--q must be positive")

    def one_run(run_seed):
        budget = SampleBudget.from_ratio(G, args.q, run_seed) if sampling else None
        return budget, run_algorithm(args.algo, G, table, budget, threads=args.threads)

    stds = None
    if args.trials == 1:
        budget, counts = one_run(seed)
    else:
        runs = [one_run(derive_seed(seed, STREAM_TRIAL, t)) for t in range(args.trials)]
        budget = runs[0][0]
        stacked = np.stack([vec for _, vec in runs]).astype(np.float64)
        counts = stacked.mean(axis=0)
        stds = stacked.std(axis=0, ddof=1)

    payload = {
        "algorithm": args.algo,
        "seed": seed,
        "q": args.q if sampling else None,
        "n": budget.n if budget is not None else None,
        "trials": args.trials,
        "total": float(np.sum(counts)),
        "classes": _class_entries(table, counts, stds),
        "manifest": _manifest("count", args, seed, args.input),
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_cp(args) -> int:
    seed = _resolve_seed(args)
    if args.epsilon <= 0:
        return _flag_error("--epsilon must be positive")
    if args.randomizations < 1:
        return _flag_error("--randomizations must be at least 1")
    sampling = args.algo != "exact"
    if sampling and (args.q is None or args.q <= 0):
        return _flag_error(f"--q (positive) is required for algorithm {args.algo!r}")
    G = read_file(args.input)
    result = cp_from_graph(
        G,
        algorithm=args.algo,
        q=args.q if sampling else None,
        num_randomizations=args.randomizations,
        epsilon=args.epsilon,
        seed=seed,
    )
    payload = {
        "epsilon": args.epsilon,
        "randomizations": args.randomizations,
        "algorithm": args.algo,
        "seed": seed,
        "q": args.q if sampling else None,
        "mu": [float(x) for x in result.mu],
        "cp": [float(x) for x in result.cp],
        "manifest": _manifest("cp", args, seed, args.input),
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_randomize(args) -> int:
    seed = _resolve_seed(args)
    G = read_file(args.input)
    Gp = randomize(G, seed)
    write_file(Gp, args.out)
    manifest = _manifest("randomize", args, seed, args.input)
    manifest["notes"] = {"duplicate_arcs": "retained"}
    _write_sidecar_manifest(args.out, manifest)
    return EXIT_OK


def cmd_generate(args) -> int:
    seed = _resolve_seed(args)
    try:
        spec = GenSpec(
            num_nodes=args.nodes, ratio=args.ratio, max_size=args.max_size, seed=seed
        )
    except ValueError as exc:
        return _flag_error(str(exc))
    G = generate(spec, dedup=args.dedup)
    write_file(G, args.out)
    manifest = _manifest("generate", args, seed, None)
    manifest["notes"] = {
        "nominal_arcs": spec.num_arcs,
        "emitted_arcs": G.num_arcs,
        "duplicate_arcs": "deduplicated" if args.dedup else "retained",
    }
    _write_sidecar_manifest(args.out, manifest)
    return EXIT_OK


def cmd_features(args) -> int:
    seed = _resolve_seed(args)
    table = _load_table(args)
    G = read_file(args.input)
    limit = G.num_arcs if args.level == "arc" else G.num_nodes
    if args.index is not None:
        if not 0 <= args.index < limit:
            return _flag_error(f"--index {args.index} out of range (< {limit})")
        indices = [args.index]
    else:
        indices = range(limit)
    vectors = []
    for i in indices:
        if args.level == "arc":
            vec = feature_vector_arc(G, table, i)
            vectors.append({"index": i, "counts": [int(x) for x in vec]})
        else:
            vec = feature_vector_node(G, table, i)
            vectors.append(
                {"index": i, "label": G.labels[i], "counts": [int(x) for x in vec]}
            )
    payload = {
        "level": args.level,
        "vectors": vectors,
        "manifest": _manifest("features", args, seed, args.input),
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_snapshots(args) -> int:
    seed = _resolve_seed(args)
    if not args.yearly and args.snapshots < 1:
        return _flag_error("--snapshots must be at least 1")
    G = read_file(args.input)
    series = snapshots(G, s=args.snapshots, yearly=args.yearly)
    payload = {
        "mode": "yearly" if args.yearly else "even",
        "thresholds": [
            int(t) if float(t).is_integer() else float(t) for t in series.thresholds
        ],
        "snapshots": [
            {
                "threshold": int(t) if float(t).is_integer() else float(t),
                "num_arcs": series.arc_counts[i],
                "counts": [int(c) for c in series.counts[i]],
                "ratios": [float(r) for r in series.ratios[i]],
            }
            for i, t in enumerate(series.thresholds)
        ],
        "manifest": _manifest("snapshots", args, seed, args.input),
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_similarity(args) -> int:
    seed = _resolve_seed(args)
    if len(args.inputs) < 2:
        return _flag_error("--inputs needs at least two graph files")
    if args.epsilon <= 0:
        return _flag_error("--epsilon must be positive")
    sampling = args.algo != "exact"
    if sampling and (args.q is None or args.q <= 0):
        return _flag_error(f"--q (positive) is required for algorithm {args.algo!r}")
    names, profiles = [], []
    for idx, path in enumerate(args.inputs):
        G = read_file(path)
        result = cp_from_graph(
            G,
            algorithm=args.algo,
            q=args.q if sampling else None,
            num_randomizations=args.randomizations,
            epsilon=args.epsilon,
            seed=derive_seed(seed, STREAM_INPUT, idx),
        )
        names.append(Path(path).name)
        profiles.append(result.cp)
    matrix = similarity_matrix(profiles)
    manifest = _manifest("similarity", args, seed, list(args.inputs))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(names)
            for row in matrix:
                writer.writerow([repr(float(x)) for x in row])
        _write_sidecar_manifest(args.out, manifest)
    else:
        _emit_json(
            {
                "names": names,
                "matrix": [[float(x) for x in row] for row in matrix],
                "manifest": manifest,
            },
            None,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dhg",
        description="Count, estimate, and characterize the 91 directed "
        "hypergraphlet classes of a directed hypergraph.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed(p):
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="RNG seed (default: $DHG_SEED, else 0)",
        )

    p = sub.add_parser("count", help="count class instances")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--q", type=float, default=None, help="samples per arc ratio")
    p.add_argument("--trials", type=int, default=1, help="repeat runs, report mean/std")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--class-map", dest="class_map", default=None,
                   help="optional pattern->number mapping file")
    p.add_argument("--out", default=None)
    add_seed(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("cp", help="characteristic profile of a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", default="exact", choices=ALGORITHMS)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--randomizations", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--out", default=None)
    add_seed(p)
    p.set_defaults(func=cmd_cp)

    p = sub.add_parser("randomize", help="degree-preserving randomized copy")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    add_seed(p)
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("generate", help="synthetic graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--max-size", dest="max_size", type=int, required=True)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--out", required=True)
    add_seed(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("features", help="per-arc or per-node class vectors")
    p.add_argument("--input", required=True)
    p.add_argument("--level", required=True, choices=("arc", "node"))
    p.add_argument("--index", type=int, default=None, help="single arc/node id")
    p.add_argument("--class-map", dest="class_map", default=None)
    p.add_argument("--out", default=None)
    add_seed(p)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("snapshots", help="temporal prefix-snapshot analysis")
    p.add_argument("--input", required=True)
    p.add_argument("--snapshots", type=int, default=10)
    p.add_argument("--yearly", action="store_true",
                   help="one threshold per distinct timestamp")
    p.add_argument("--out", default=None)
    add_seed(p)
    p.set_defaults(func=cmd_snapshots)

    p = sub.add_parser("similarity", help="pairwise profile similarity matrix")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--algo", default="exact", choices=ALGORITHMS)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--randomizations", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--out", default=None, help="CSV output (JSON to stdout otherwise)")
    add_seed(p)
    p.set_defaults(func=cmd_similarity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_FLAGS
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: cannot access input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS


if __name__ == "__main__":
    sys.exit(main())
