"""Command-line entry point: ``gcgmine <subcommand> ...``.

Exit status is 0 on success, 1 for input errors and 2 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path

from . import __version__, io
from .bench import run_bench
from .cliques import cardinality_histogram
from .core import InputError, InvariantError
from .pipeline import (
    PipelineConfig,
    extract_relations_stage,
    ingest_stage,
    mine_cliques_stage,
    mine_patterns_stage,
    synth_stage,
)

log = logging.getLogger("gcgmine")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weights(text: str) -> dict[str, float]:
    out = {}
    for part in text.split(","):
        name, _, w = part.partition(":")
        try:
            out[name.strip()] = float(w) if w else 1.0
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad type weight {part!r}") from None
    total = sum(out.values())
    if total <= 0:
        raise argparse.ArgumentTypeError("type weights must sum to a positive value")
    return {k: v / total for k, v in out.items()}


def _add_common(p: argparse.ArgumentParser, *names: str) -> None:
    if "tau" in names:
        p.add_argument("--tau", type=float, required=True, help="neighbourhood distance and grid cell side (Mpc)")
    if "dims" in names:
        p.add_argument("--dims", type=int, choices=(2, 3), help="expected dimensionality of the points")
    if "threads" in names:
        p.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    if "no-negatives" in names:
        p.add_argument("--no-negatives", action="store_true", help="drop negative (-T) items")
    if "seed" in names:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcgmine", description="Maximal clique co-location mining.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="catalog CSV -> points CSV")
    p.add_argument("catalog")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--h0", type=float, default=71.0, help="Hubble constant, km/s/Mpc (default 71)")
    p.add_argument("--zconf-direction", choices=("lt", "ge"), default="lt",
                   help="keep rows with zConf < 0.95 (lt, default) or >= 0.95 (ge)")

    p = sub.add_parser("synth", help="generate synthetic points")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dims", type=int, choices=(2, 3), default=3)
    p.add_argument("--extent", type=_floats, default=[100.0],
                   help="box side, or one side per axis, in Mpc")
    p.add_argument("--types", type=_weights, default={"A": 0.5, "B": 0.5}, help="e.g. A:0.7,B:0.3")
    p.add_argument("--clusters", type=int, default=0)
    p.add_argument("--cluster-sigma", type=float, default=1.0)
    _add_common(p, "seed")

    p = sub.add_parser("mine-cliques", help="points CSV -> maximal cliques JSONL")
    p.add_argument("points")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--histogram", help="cardinality histogram CSV (default: <output>.hist.csv)")
    p.add_argument("--faithful-prune", action="store_true",
                   help="keep only neighbourhood lists that are complete (literal list pruning; may miss cliques)")
    _add_common(p, "tau", "dims", "threads")

    p = sub.add_parser("extract-relations", help="cliques JSONL -> transactions")
    p.add_argument("cliques")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--universe", help="comma-separated type universe (default: from the cliques file)")
    _add_common(p, "no-negatives")

    p = sub.add_parser("mine-patterns", help="transactions -> interesting patterns CSV")
    p.add_argument("transactions")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--min-support", type=int, default=1)
    p.add_argument("--min-minpi", type=float, default=0.0)
    _add_common(p, "no-negatives", "threads")

    p = sub.add_parser("stats", help="clique cardinality histogram and type composition")
    p.add_argument("cliques")
    p.add_argument("-o", "--output", required=True, help="histogram CSV")
    p.add_argument("--type-dist", help="CSV of type counts among cliques of one cardinality")
    p.add_argument("--cardinality", type=int, help="cardinality for --type-dist (default: largest)")

    p = sub.add_parser("bench", help="runtime scaling on synthetic data")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--sizes", type=_ints, default=[10000, 20000, 40000, 80000])
    p.add_argument("--taus", type=_floats, default=[1.0])
    p.add_argument("--density", type=float, default=0.5, help="points per Mpc**dims")
    p.add_argument("--dims", type=int, choices=(2, 3), default=3)
    p.add_argument("--repeats", type=int, default=1)
    _add_common(p, "seed", "threads")
    return parser


def _run(args: argparse.Namespace) -> None:
    cmd = args.command
    if cmd == "ingest":
        cfg = PipelineConfig(h0=args.h0, zconf_direction=args.zconf_direction)
        _, summary = ingest_stage(args.catalog, args.output, cfg)
        print(summary)
    elif cmd == "synth":
        extent = args.extent * args.dims if len(args.extent) == 1 else args.extent
        if len(extent) != args.dims:
            raise InputError("--extent needs one value or one per axis")
        pts = synth_stage(args.output, args.n, extent, args.types, args.seed, args.clusters, args.cluster_sigma)
        print(f"points={len(pts)}")
    elif cmd == "mine-cliques":
        cfg = PipelineConfig(tau=args.tau, dims=args.dims, threads=args.threads, faithful_prune=args.faithful_prune)
        hist = args.histogram or str(Path(args.output).with_suffix("")) + ".hist.csv"
        result = mine_cliques_stage(args.points, args.output, hist, cfg)
        print(f"objects={len(result.graph)} lists={len(result.neighborhoods)} cliques={len(result.cliques)}")
    elif cmd == "extract-relations":
        universe = [u.strip() for u in args.universe.split(",")] if args.universe else None
        rel = extract_relations_stage(args.cliques, args.output, PipelineConfig(no_negatives=args.no_negatives), universe)
        print(f"transactions={len(rel)}")
    elif cmd == "mine-patterns":
        cfg = PipelineConfig(min_support=args.min_support, min_minpi=args.min_minpi,
                             no_negatives=args.no_negatives, threads=args.threads)
        pats = mine_patterns_stage(args.transactions, args.output, cfg)
        print(f"patterns={len(pats)}")
    elif cmd == "stats":
        _stats(args)
    elif cmd == "bench":
        rows = run_bench(args.sizes, args.taus, args.density, args.dims, args.seed, args.repeats, args.threads)
        config = {"stage": "bench", "sizes": args.sizes, "taus": args.taus, "density": args.density,
                  "dims": args.dims, "seed": args.seed, "repeats": args.repeats}
        table = [(r.n, r.tau, f"{r.wall_ms:.3f}", r.clique_count) for r in rows]
        target = sys.stdout if args.output == "-" else args.output
        io.write_table(target, ("n", "tau", "wall_ms", "clique_count"), table, config)


def _stats(args: argparse.Namespace) -> None:
    cliques, types, header = io.read_cliques(args.cliques)
    config = {"stage": "stats", "input": Path(args.cliques).name, "tau": header.get("tau")}
    hist = cardinality_histogram(cliques)
    io.write_histogram(args.output, hist, config)
    print(f"cliques={len(cliques)} max_cardinality={max(hist, default=0)}")
    if args.type_dist:
        size = args.cardinality if args.cardinality is not None else max(hist, default=0)
        per_type: Counter[str] = Counter()
        chosen = [c for c in cliques if len(c) == size]
        for c in chosen:
            per_type.update(types[m] for m in c)
        io.write_table(
            args.type_dist,
            ("cardinality", "type", "count"),
            [(size, t, n) for t, n in sorted(per_type.items())],
            {**config, "cardinality": size, "cliques": len(chosen)},
        )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _run(args)
    except InputError as exc:
        print(f"gcgmine: error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"gcgmine: invariant violated: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
