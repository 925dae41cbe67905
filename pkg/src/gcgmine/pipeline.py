"""File-to-file pipeline stages.

ingest -> mine-cliques -> extract-relations -> mine-patterns.  Each stage
reads the previous stage's file and writes its own, with the settings that
affect its output echoed into the header.  Worker counts are deliberately
left out of headers because they never change results.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import io
from .cliques import cardinality_histogram, mine_cliques
from .core import InputError, InvariantError, PointSet, check_tau, is_complete_positions
from .ingest import DEFAULT_H0, HubbleParams, generate_synthetic, ingest_rows, read_catalog
from .itemsets import TransactionDB, mine_interesting
from .relations import relationships_from_cliques

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    tau: float = 1.0
    dims: int | None = None
    h0: float = DEFAULT_H0
    min_support: int = 1
    min_minpi: float = 0.0
    seed: int = 0
    threads: int = 1
    faithful_prune: bool = False
    no_negatives: bool = False
    zconf_direction: str = "lt"

    def __post_init__(self) -> None:
        check_tau(self.tau)
        if self.dims not in (None, 2, 3):
            raise InputError("dims must be 2 or 3")
        if not (math.isfinite(self.h0) and self.h0 > 0):
            raise InputError("h0 must be positive")
        if int(self.min_support) != self.min_support or self.min_support < 1:
            raise InputError("min_support must be an integer >= 1")
        if not 0.0 <= self.min_minpi <= 1.0:
            raise InputError("min_minpi must lie in [0, 1]")
        if self.threads < 1:
            raise InputError("threads must be >= 1")
        if self.zconf_direction not in ("lt", "ge"):
            raise InputError("zconf_direction must be 'lt' or 'ge'")


def ingest_stage(catalog: str | Path, out: str | Path, cfg: PipelineConfig) -> tuple[PointSet, str]:
    try:
        with open(catalog, encoding="utf-8", newline="") as fh:
            points, report = ingest_rows(
                (row for _, row in read_catalog(fh)), HubbleParams(h0=cfg.h0), cfg.zconf_direction
            )
    except OSError as exc:
        raise InputError(f"cannot read {catalog}: {exc}") from None
    io.write_points(out, points, {
        "stage": "ingest", "input": Path(catalog).name, "h0": cfg.h0,
        "zconf_direction": cfg.zconf_direction,
        "accepted": report.accepted, "rejected": report.rejected,
    })
    return points, report.summary()


def synth_stage(
    out: str | Path, n: int, extent: Sequence[float], type_weights: dict[str, float],
    seed: int, clusters: int = 0, cluster_sigma: float = 1.0,
) -> PointSet:
    points = generate_synthetic(n, extent, type_weights, seed, clusters, cluster_sigma)
    io.write_points(out, points, {
        "stage": "synth", "n": n, "extent": list(map(float, extent)),
        "types": dict(sorted(type_weights.items())), "seed": seed,
        "clusters": clusters, "cluster_sigma": cluster_sigma,
    })
    return points


def mine_cliques_stage(points_path: str | Path, out: str | Path, histogram: str | Path | None, cfg: PipelineConfig):
    points, _ = io.read_points(points_path, cfg.dims)
    result = mine_cliques(points, cfg.tau, workers=cfg.threads, faithful=cfg.faithful_prune)
    graph = result.graph
    for members in result.cliques:
        if not is_complete_positions(graph, [points.index_of(m) for m in members]):
            raise InvariantError(f"emitted clique {members} is not complete")
    header = {
        "stage": "mine-cliques", "input": Path(points_path).name, "tau": cfg.tau,
        "dims": points.dims, "faithful_prune": cfg.faithful_prune,
        "universe": list(points.type_universe()),
    }
    types = dict(zip(points.ids, points.types))
    io.write_cliques(out, result.cliques, types, header)
    hist = cardinality_histogram(result.cliques)
    if histogram is not None:
        io.write_histogram(histogram, hist, header)
    return result


def extract_relations_stage(cliques_path: str | Path, out: str | Path, cfg: PipelineConfig, universe: Sequence[str] | None = None):
    cliques, types, header = io.read_cliques(cliques_path)
    if universe is None:
        universe = header.get("universe") or sorted(set(types.values()))
    relations = relationships_from_cliques(cliques, types, universe)
    if cfg.no_negatives:
        relations = [r.without_negatives() for r in relations]
    io.write_transactions(out, relations, {
        "stage": "extract-relations", "input": Path(cliques_path).name,
        "universe": sorted(universe), "no_negatives": cfg.no_negatives,
    })
    return relations


def mine_patterns_stage(transactions_path: str | Path, out: str | Path, cfg: PipelineConfig):
    relations, _ = io.read_transactions(transactions_path)
    db = TransactionDB.from_transactions(relations)
    if cfg.no_negatives:
        db = db.without_negatives()
    patterns = mine_interesting(db, cfg.min_support, cfg.min_minpi, workers=cfg.threads)
    io.write_patterns(out, patterns, {
        "stage": "mine-patterns", "input": Path(transactions_path).name,
        "min_support": cfg.min_support, "min_minpi": cfg.min_minpi,
        "no_negatives": cfg.no_negatives, "transactions": len(db),
    })
    return patterns


def run_pipeline(points_path: str | Path, out_dir: str | Path, cfg: PipelineConfig) -> dict[str, Path]:
    """Run mine-cliques, extract-relations and mine-patterns in-process."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "cliques": out_dir / "cliques.jsonl",
        "histogram": out_dir / "histogram.csv",
        "transactions": out_dir / "transactions.txt",
        "patterns": out_dir / "patterns.csv",
    }
    mine_cliques_stage(points_path, paths["cliques"], paths["histogram"], cfg)
    extract_relations_stage(paths["cliques"], paths["transactions"], cfg)
    mine_patterns_stage(paths["transactions"], paths["patterns"], cfg)
    return paths
