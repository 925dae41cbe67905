"""Maximal clique mining over the tau-neighbourhood graph.

The grid splits the problem into one small subproblem per point: the
neighbourhood list of ``v`` (``v`` plus every point within tau).  Every maximal
clique containing ``v`` lies inside that list, and a clique that is maximal
inside the list and contains ``v`` is maximal in the whole graph, because any
vertex extending it would have to be a neighbour of ``v``.  Each list is
therefore solved independently and the results merged.

To avoid emitting a clique once per member, a list only reports cliques whose
lowest-positioned member is its centre (the earlier neighbours act as the
exclusion set of Bron-Kerbosch).
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import InputError, InvariantError, NeighborGraph, PointSet, check_tau
from .grid import GridIndex, build_index, neighbor_pairs

log = logging.getLogger(__name__)

ORACLE_LIMIT = 500


class OracleRefusal(InputError):
    """The brute-force oracle was asked to handle a graph above its size limit."""


@dataclass(frozen=True)
class NeighborhoodList:
    center: int
    members: tuple[int, ...]  # center first, then neighbours in ascending position

    def ids(self, points: PointSet) -> tuple[str, ...]:
        return tuple(points.ids[i] for i in self.members)


@dataclass(frozen=True)
class CliqueSet:
    """Maximal cliques as id tuples in canonical order.

    Members are sorted by natural id order and cliques lexicographically by
    their members, so two equal sets always compare (and serialise) equal.
    """

    cliques: tuple[tuple[str, ...], ...]

    @classmethod
    def from_positions(cls, points: PointSet, cliques: Iterable[Iterable[int]]) -> CliqueSet:
        ranks = points.id_ranks()
        ranked = sorted(tuple(sorted(int(ranks[i]) for i in c)) for c in cliques)
        by_rank = np.argsort(ranks)
        return cls(tuple(tuple(points.ids[by_rank[r]] for r in c) for c in ranked))

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.cliques)

    def as_sets(self) -> set[frozenset[str]]:
        return {frozenset(c) for c in self.cliques}


def build_neighborhoods(points: PointSet, index: GridIndex) -> list[NeighborhoodList]:
    """One list per point that has at least one neighbour within tau."""
    if index.dims != points.dims and len(points):
        raise InputError("index and points differ in dimensionality")
    src, dst = neighbor_pairs(points, index)
    if len(src) == 0:
        return []
    centers, starts = np.unique(src, return_index=True)
    bounds = np.append(starts, len(src))
    dst_list = dst.tolist()
    return [
        NeighborhoodList(c, (c, *dst_list[bounds[k]:bounds[k + 1]]))
        for k, c in enumerate(centers.tolist())
    ]


def graph_from_neighborhoods(points: PointSet, tau: float, neighborhoods: Sequence[NeighborhoodList]) -> NeighborGraph:
    adj: list[frozenset[int]] = [frozenset()] * len(points)
    for nl in neighborhoods:
        adj[nl.center] = frozenset(nl.members[1:])
    graph = NeighborGraph(points, float(tau), tuple(adj))
    for a, nbrs in enumerate(graph.adjacency):
        for b in nbrs:
            if a not in graph.adjacency[b]:
                raise InvariantError(f"neighbourhoods are not symmetric at ({a}, {b})")
    return graph


def _cliques_at(center: int, adjacency: Sequence[frozenset[int]]) -> list[tuple[int, ...]]:
    """Maximal cliques whose lowest-positioned member is ``center``.

    Bron-Kerbosch with Tomita pivoting on bitsets over the neighbour list.
    """
    nbrs = sorted(adjacency[center])
    slot = {u: k for k, u in enumerate(nbrs)}
    masks = []
    for u in nbrs:
        m = 0
        for w in adjacency[u]:
            k = slot.get(w)
            if k is not None:
                m |= 1 << k
        masks.append(m)
    later = 0
    for k, u in enumerate(nbrs):
        if u > center:
            later |= 1 << k
    earlier = ((1 << len(nbrs)) - 1) & ~later
    found: list[tuple[int, ...]] = []

    def expand(chosen: list[int], cand: int, excl: int) -> None:
        if not cand:
            if not excl:
                found.append((center, *(nbrs[k] for k in chosen)))
            return
        best, pivot = -1, 0
        pool = cand | excl
        while pool:
            low = pool & -pool
            k = low.bit_length() - 1
            hits = (cand & masks[k]).bit_count()
            if hits > best:
                best, pivot = hits, masks[k]
            pool ^= low
        branch = cand & ~pivot
        while branch:
            low = branch & -branch
            k = low.bit_length() - 1
            chosen.append(k)
            expand(chosen, cand & masks[k], excl & masks[k])
            chosen.pop()
            cand &= ~low
            excl |= low
            branch ^= low

    if later:
        expand([], later, earlier)
    return found


_WORKER_ADJ: Sequence[frozenset[int]] = ()


def _init_worker(adjacency: Sequence[frozenset[int]]) -> None:
    global _WORKER_ADJ
    _WORKER_ADJ = adjacency


def _chunk_cliques(centers: Sequence[int]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for c in centers:
        out.extend(_cliques_at(c, _WORKER_ADJ))
    return out


def drop_subsets(cliques: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    """Deduplicate and remove every set strictly contained in another.

    Sweeps from largest to smallest, checking each set only against kept sets
    that share its rarest element.
    """
    unique = sorted({frozenset(c) for c in cliques}, key=len, reverse=True)
    containing: dict[int, list[frozenset[int]]] = {}
    kept: list[frozenset[int]] = []
    for c in unique:
        if c:
            rare = min(c, key=lambda e: len(containing.get(e, ())))
            if any(c < other for other in containing.get(rare, ())):
                continue
        kept.append(c)
        for e in c:
            containing.setdefault(e, []).append(c)
    return kept


def mine_maximal_cliques(
    neighborhoods: Sequence[NeighborhoodList],
    graph: NeighborGraph,
    workers: int = 1,
) -> CliqueSet:
    """Exact maximal cliques (size >= 2) from per-point neighbourhood lists.

    ``workers > 1`` spreads the lists over a process pool; the output does not
    depend on the worker count.
    """
    centers = [nl.center for nl in neighborhoods]
    workers = max(1, int(workers))
    if workers == 1 or len(centers) < 2 * workers:
        _init_worker(graph.adjacency)
        try:
            raw = _chunk_cliques(centers)
        finally:
            _init_worker(())
    else:
        chunks = [centers[k::workers * 4] for k in range(workers * 4)]
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(graph.adjacency,)) as pool:
            raw = [c for part in pool.map(_chunk_cliques, chunks) for c in part]
    merged = drop_subsets(raw)
    if len(merged) != len(raw):
        log.debug("merge removed %d duplicate or non-maximal cliques", len(raw) - len(merged))
    return CliqueSet.from_positions(graph.points, merged)


def faithful_prune(neighborhoods: Sequence[NeighborhoodList], graph: NeighborGraph) -> CliqueSet:
    """Keep only neighbourhood lists that are already complete, deduplicated.

    This is the literal list-pruning scheme.  It is exact whenever every
    maximal clique is some point's full neighbourhood, but it can miss
    cliques otherwise (a 5-cycle yields nothing).
    """
    survivors = []
    for nl in neighborhoods:
        if all(b in graph.adjacency[a] for a, b in combinations(nl.members, 2)):
            survivors.append(frozenset(nl.members))
    return CliqueSet.from_positions(graph.points, set(survivors))


def brute_force_maximal_cliques(graph: NeighborGraph, limit: int = ORACLE_LIMIT) -> CliqueSet:
    """Reference enumeration over the whole graph, no grid and no ordering trick."""
    n = len(graph)
    if n > limit:
        raise OracleRefusal(f"brute-force oracle limited to {limit} objects, got {n}")
    adj = [set(s) for s in graph.adjacency]
    out: list[frozenset[int]] = []

    def bk(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(r) >= 2:
                out.append(frozenset(r))
            return
        u = max(p | x, key=lambda v: len(p & adj[v]))
        for v in list(p - adj[u]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    bk(set(), set(range(n)), set())
    return CliqueSet.from_positions(graph.points, out)


def cardinality_histogram(cliques: Iterable[Sequence[str]]) -> dict[int, int]:
    counts = Counter(len(c) for c in cliques)
    return dict(sorted(counts.items()))


@dataclass(frozen=True, eq=False)
class CliqueMiningResult:
    index: GridIndex
    neighborhoods: list[NeighborhoodList]
    graph: NeighborGraph
    cliques: CliqueSet


def mine_cliques(points: PointSet, tau: float, *, workers: int = 1, faithful: bool = False) -> CliqueMiningResult:
    """Grid index, neighbourhood lists and maximal cliques in one call."""
    tau = check_tau(tau)
    index = build_index(points, tau)
    neighborhoods = build_neighborhoods(points, index)
    graph = graph_from_neighborhoods(points, tau, neighborhoods)
    if faithful:
        cliques = faithful_prune(neighborhoods, graph)
    else:
        cliques = mine_maximal_cliques(neighborhoods, graph, workers=workers)
    return CliqueMiningResult(index, neighborhoods, graph, cliques)
