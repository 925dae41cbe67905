"""Uniform grid with cell side tau for fixed-radius neighbour search.

A point at ``x`` lives in cell ``floor(x / tau)`` along every axis (cells are
half-open, floor rounds toward -inf so negative coordinates work).  Any two
points within distance tau sit in cells whose keys differ by at most one per
axis, so a point's candidate neighbours are the points in the 3**dims cells
around it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import InputError, PointSet, check_tau, pairwise_distances

CellKey = tuple[int, ...]


def cell_keys(coords: np.ndarray, tau: float) -> np.ndarray:
    return np.floor(coords / tau).astype(np.int64)


@dataclass(frozen=True, eq=False)
class GridIndex:
    tau: float
    dims: int
    cells: dict[CellKey, list[int]]
    keys: np.ndarray  # (n, dims) cell key of every point

    def cell_of(self, position: int) -> CellKey:
        if not 0 <= position < len(self.keys):
            raise InputError(f"unknown point position {position}")
        return tuple(self.keys[position].tolist())

    def __len__(self) -> int:
        return len(self.keys)


def build_index(points: PointSet, tau: float) -> GridIndex:
    tau = check_tau(tau)
    dims = points.dims
    keys = cell_keys(points.coords, tau)
    cells: dict[CellKey, list[int]] = {}
    for i, key in enumerate(map(tuple, keys.tolist())):
        cells.setdefault(key, []).append(i)
    keys.setflags(write=False)
    return GridIndex(tau, dims, cells, keys)


def cell_offsets(dims: int) -> list[CellKey]:
    return list(product((-1, 0, 1), repeat=dims))


def neighbor_cells(key: CellKey, index: GridIndex, *, materialized: bool = True) -> list[CellKey]:
    """Keys of the 3**dims cells around ``key`` (including ``key``).

    With ``materialized=True`` only cells that actually hold points are
    returned, which is what candidate search needs.
    """
    if len(key) != index.dims:
        raise InputError(f"cell key has {len(key)} components, index has {index.dims}")
    around = [tuple(k + o for k, o in zip(key, off)) for off in cell_offsets(index.dims)]
    if materialized:
        return [k for k in around if k in index.cells]
    return around


def candidate_neighbors(position: int, index: GridIndex) -> list[int]:
    """Points in the cells surrounding ``position``'s cell, excluding itself."""
    key = index.cell_of(position)
    out: list[int] = []
    for k in neighbor_cells(key, index):
        out.extend(j for j in index.cells[k] if j != position)
    return out


def _linear_codes(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    # Mixed-radix code with a one-cell margin so +/-1 offsets never wrap.
    lo = keys.min(axis=0) - 1
    span = keys.max(axis=0) - lo + 2
    if float(np.prod(span.astype(np.float64))) >= 2.0**62:
        return None
    strides = np.ones(keys.shape[1], dtype=np.int64)
    for axis in range(keys.shape[1] - 2, -1, -1):
        strides[axis] = strides[axis + 1] * span[axis + 1]
    return (keys - lo) @ strides, strides


def neighbor_pairs(points: PointSet, index: GridIndex) -> tuple[np.ndarray, np.ndarray]:
    """All ordered pairs ``(i, j)``, ``i != j``, with distance <= tau.

    Scans the 3**dims surrounding cells of every point, vectorised over
    points one offset at a time.  Pairs come back sorted by ``(i, j)``.
    """
    n = len(points)
    empty = np.empty(0, dtype=np.int64)
    if n < 2:
        return empty, empty
    coded = _linear_codes(index.keys)
    if coded is None:
        return _neighbor_pairs_dict(points, index)
    codes, strides = coded
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    all_src, all_dst = [], []
    positions = np.arange(n, dtype=np.int64)
    for off in cell_offsets(index.dims):
        target = codes + np.asarray(off, dtype=np.int64) @ strides
        lo = np.searchsorted(sorted_codes, target, side="left")
        hi = np.searchsorted(sorted_codes, target, side="right")
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            continue
        src = np.repeat(positions, counts)
        within = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        dst = order[np.repeat(lo, counts) + within]
        keep = src != dst
        src, dst = src[keep], dst[keep]
        keep = pairwise_distances(points.coords, src, dst) <= index.tau
        all_src.append(src[keep])
        all_dst.append(dst[keep])
    if not all_src:
        return empty, empty
    src = np.concatenate(all_src)
    dst = np.concatenate(all_dst)
    order = np.lexsort((dst, src))
    return src[order], dst[order]


def _neighbor_pairs_dict(points: PointSet, index: GridIndex) -> tuple[np.ndarray, np.ndarray]:
    # Fallback for key ranges too wide to linearise into int64.
    src, dst = [], []
    for i in range(len(points)):
        cand = np.asarray(candidate_neighbors(i, index), dtype=np.int64)
        if len(cand) == 0:
            continue
        me = np.full(len(cand), i, dtype=np.int64)
        keep = pairwise_distances(points.coords, me, cand) <= index.tau
        cand = np.sort(cand[keep])
        src.append(np.full(len(cand), i, dtype=np.int64))
        dst.append(cand)
    if not src:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(src), np.concatenate(dst)
