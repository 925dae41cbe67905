"""Domain types and distance semantics shared by every stage of the pipeline.

Distances are plain Euclidean distances in Cartesian megaparsecs.  The edge
criterion is closed (``d <= tau``) and evaluated in exact double precision with
no epsilon, so every module must compute distances with the same sequence of
floating-point operations: per-axis differences, squared and accumulated from
the first axis to the last, then a correctly rounded square root.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


class InputError(ValueError):
    """Invalid user input: bad parameters, malformed files, unknown ids."""


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


_RESERVED = re.compile(r"[+\s;,]")


def validate_type_label(label: str) -> str:
    """Return ``label`` if it can be used as an object type, else raise.

    Labels must be non-empty and must not clash with the item encoding used
    for complex relationships ("A+", "-A") or with the output delimiters.
    """
    if not isinstance(label, str) or not label:
        raise InputError("object type label must be a non-empty string")
    if label.startswith(("-", "#")) or _RESERVED.search(label):
        raise InputError(f"object type label {label!r} uses a reserved character")
    return label


_ID_CHUNK = re.compile(r"(\d+)")


def id_sort_key(object_id: str) -> tuple:
    """Natural sort key for object ids, so "A2" < "A10" and "9" < "10"."""
    parts = _ID_CHUNK.split(object_id)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)


@dataclass(frozen=True)
class SpatialObject:
    id: str
    type: str
    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        validate_type_label(self.type)
        coords = tuple(float(c) for c in self.coords)
        if len(coords) not in (2, 3):
            raise InputError(f"object {self.id!r}: expected 2 or 3 coordinates, got {len(coords)}")
        if not all(math.isfinite(c) for c in coords):
            raise InputError(f"object {self.id!r}: coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    @property
    def dims(self) -> int:
        return len(self.coords)


def euclidean_distance(a: SpatialObject, b: SpatialObject) -> float:
    if a.dims != b.dims:
        raise InputError(f"dimensionality mismatch: {a.dims} vs {b.dims}")
    total = 0.0
    for x, y in zip(a.coords, b.coords):
        diff = x - y
        total = total + diff * diff
    return math.sqrt(total)


def pairwise_distances(coords: np.ndarray, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Vectorised counterpart of :func:`euclidean_distance` for index pairs.

    Uses the same operation order so both paths agree bit for bit.
    """
    total = np.zeros(len(src), dtype=np.float64)
    for axis in range(coords.shape[1]):
        diff = coords[src, axis] - coords[dst, axis]
        total = total + diff * diff
    return np.sqrt(total)


def edge_count(cardinality: int) -> int:
    """Number of edges in a complete graph on ``cardinality`` vertices."""
    if cardinality < 2:
        raise InputError("a complete graph needs at least 2 vertices")
    return cardinality * (cardinality - 1) // 2


@dataclass(frozen=True, eq=False)
class PointSet:
    """A dataset of typed points stored column-wise.

    ``coords`` is an ``(n, dims)`` float array; ``ids`` and ``types`` are
    parallel sequences.  Positions in these arrays are the integer vertex
    labels used internally by the grid and clique code.
    """

    ids: tuple[str, ...]
    types: tuple[str, ...]
    coords: np.ndarray
    _position: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        coords = np.asarray(self.coords, dtype=np.float64)
        if coords.ndim != 2 or (len(coords) and coords.shape[1] not in (2, 3)):
            raise InputError("coordinates must form an (n, 2) or (n, 3) array")
        if not (len(self.ids) == len(self.types) == len(coords)):
            raise InputError("ids, types and coords must have the same length")
        if not np.isfinite(coords).all():
            raise InputError("coordinates must be finite")
        for t in set(self.types):
            validate_type_label(t)
        position = {}
        for i, oid in enumerate(self.ids):
            if oid in position:
                raise InputError(f"duplicate object id {oid!r}")
            position[oid] = i
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_position", position)

    @classmethod
    def from_objects(cls, objects: Iterable[SpatialObject]) -> PointSet:
        objects = list(objects)
        if not objects:
            return cls((), (), np.empty((0, 2)))
        dims = {o.dims for o in objects}
        if len(dims) != 1:
            raise InputError("all objects must have the same dimensionality")
        return cls(
            tuple(o.id for o in objects),
            tuple(o.type for o in objects),
            np.array([o.coords for o in objects], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[SpatialObject]:
        for i in range(len(self)):
            yield self[i]

    def __getitem__(self, i: int) -> SpatialObject:
        return SpatialObject(self.ids[i], self.types[i], tuple(self.coords[i].tolist()))

    @property
    def dims(self) -> int:
        return self.coords.shape[1]

    def index_of(self, object_id: str) -> int:
        try:
            return self._position[object_id]
        except KeyError:
            raise InputError(f"unknown object id {object_id!r}") from None

    def type_of(self, object_id: str) -> str:
        return self.types[self.index_of(object_id)]

    def type_universe(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.types)))

    def id_ranks(self) -> np.ndarray:
        """Rank of every point under :func:`id_sort_key` (canonical order)."""
        order = sorted(range(len(self)), key=lambda i: id_sort_key(self.ids[i]))
        ranks = np.empty(len(self), dtype=np.int64)
        ranks[order] = np.arange(len(self))
        return ranks


@dataclass(frozen=True, eq=False)
class NeighborGraph:
    """The tau-neighbourhood graph: an edge joins points at distance <= tau.

    ``adjacency[i]`` holds the positions of the neighbours of point ``i``
    (never ``i`` itself).
    """

    points: PointSet
    tau: float
    adjacency: tuple[frozenset[int], ...]

    @classmethod
    def from_pairs(cls, points: PointSet, tau: float, src: np.ndarray, dst: np.ndarray) -> NeighborGraph:
        adj: list[set[int]] = [set() for _ in range(len(points))]
        for a, b in zip(src.tolist(), dst.tolist()):
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return cls(points, float(tau), tuple(frozenset(s) for s in adj))

    @classmethod
    def all_pairs(cls, points: PointSet, tau: float) -> NeighborGraph:
        """Build the graph by checking every pair; O(n^2), no spatial index."""
        check_tau(tau)
        n = len(points)
        src, dst = np.triu_indices(n, k=1)
        keep = pairwise_distances(points.coords, src, dst) <= tau
        return cls.from_pairs(points, tau, src[keep], dst[keep])

    def __len__(self) -> int:
        return len(self.points)

    def are_adjacent(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def edges(self) -> Iterator[tuple[int, int]]:
        for a, nbrs in enumerate(self.adjacency):
            for b in nbrs:
                if a < b:
                    yield a, b


def check_tau(tau: float) -> float:
    if not (isinstance(tau, (int, float)) and math.isfinite(tau) and tau > 0):
        raise InputError(f"tau must be a positive finite number, got {tau!r}")
    return float(tau)


def is_complete(graph: NeighborGraph, members: Iterable[str]) -> bool:
    """True iff every distinct pair of the given object ids is adjacent."""
    idx = [graph.points.index_of(m) for m in members]
    return all(graph.are_adjacent(a, b) for a, b in combinations(set(idx), 2))


def is_complete_positions(graph: NeighborGraph, members: Sequence[int]) -> bool:
    return all(b in graph.adjacency[a] for a, b in combinations(members, 2))
