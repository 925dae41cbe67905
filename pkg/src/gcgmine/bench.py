"""Runtime scaling on uniform synthetic data at fixed density."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cliques import mine_cliques
from .ingest import generate_synthetic


@dataclass(frozen=True)
class BenchRow:
    n: int
    tau: float
    wall_ms: float
    clique_count: int


def box_side(n: int, density: float, dims: int) -> float:
    """Side of the cube holding ``n`` points at ``density`` points per Mpc**dims."""
    return (max(n, 1) / density) ** (1.0 / dims)


def run_bench(
    sizes: Sequence[int],
    taus: Iterable[float],
    density: float,
    dims: int = 3,
    seed: int = 0,
    repeats: int = 1,
    workers: int = 1,
) -> list[BenchRow]:
    """Time grid clique mining for every (n, tau); best wall time of ``repeats``."""
    rows = []
    for tau in taus:
        for n in sizes:
            side = box_side(n, density, dims)
            points = generate_synthetic(n, [side] * dims, {"A": 0.5, "B": 0.5}, seed)
            best = float("inf")
            count = 0
            for _ in range(max(1, repeats)):
                start = time.perf_counter()
                result = mine_cliques(points, tau, workers=workers)
                best = min(best, (time.perf_counter() - start) * 1000.0)
                count = len(result.cliques)
            rows.append(BenchRow(n, float(tau), best, count))
    return rows
