"""Stage file formats.

Every file starts with one comment line ``# gcgmine <version> <json config>``
recording the settings that produced it.  Readers skip comment lines and
return the recorded config alongside the data.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, TextIO

import numpy as np

from . import __version__
from .core import InputError, PointSet
from .itemsets import InterestingPattern
from .relations import ComplexRelationship, Item

HEADER_PREFIX = "# gcgmine"


def header_line(config: Mapping[str, Any]) -> str:
    return f"{HEADER_PREFIX} {__version__} {json.dumps(dict(config), sort_keys=True)}\n"


def _split_header(lines: list[str]) -> tuple[dict[str, Any], list[tuple[int, str]]]:
    config: dict[str, Any] = {}
    body = []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith(HEADER_PREFIX):
            parts = line.rstrip("\n").split(" ", 3)
            if len(parts) == 4:
                try:
                    config = json.loads(parts[3])
                except json.JSONDecodeError:
                    raise InputError(f"line {lineno}: unreadable header") from None
            continue
        if line.startswith("#") or not line.strip():
            continue
        body.append((lineno, line.rstrip("\n")))
    return config, body


def _read_lines(path: str | Path) -> list[str]:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.readlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(path: str | Path, config: Mapping[str, Any], body: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header_line(config))
        for line in body:
            fh.write(line)
            fh.write("\n")


# -- points ---------------------------------------------------------------

def write_points(path: str | Path, points: PointSet, config: Mapping[str, Any]) -> None:
    axes = "x,y,z"[: 2 * points.dims - 1] if len(points) else "x,y"
    rows = (
        ",".join([oid, t, *(repr(float(v)) for v in xyz)])
        for oid, t, xyz in zip(points.ids, points.types, points.coords.tolist())
    )
    _write(path, config, [f"id,type,{axes}", *rows])


def read_points(path: str | Path, dims: int | None = None) -> tuple[PointSet, dict[str, Any]]:
    config, body = _split_header(_read_lines(path))
    if not body:
        return PointSet((), (), np.empty((0, dims or 2))), config
    header_no, header = body[0]
    cols = [c.strip() for c in next(csv.reader([header]))]
    if cols[:4] != ["id", "type", "x", "y"] or cols[4:] not in ([], ["z"]):
        raise InputError(f"line {header_no}: expected columns id,type,x,y[,z], got {','.join(cols)}")
    file_dims = len(cols) - 2
    if dims is not None and dims != file_dims:
        raise InputError(f"points file is {file_dims}-D but --dims {dims} was requested")
    ids, types, coords = [], [], []
    for lineno, rec in zip((n for n, _ in body[1:]), csv.reader(line for _, line in body[1:])):
        if len(rec) != len(cols):
            raise InputError(f"line {lineno}: expected {len(cols)} fields, got {len(rec)}")
        try:
            coords.append([float(v) for v in rec[2:]])
        except ValueError:
            raise InputError(f"line {lineno}: non-numeric coordinate") from None
        ids.append(rec[0])
        types.append(rec[1])
    try:
        pts = PointSet(tuple(ids), tuple(types), np.array(coords, dtype=np.float64).reshape(-1, file_dims))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
    return pts, config


# -- cliques --------------------------------------------------------------

def clique_record(members: Sequence[str], types: Mapping[str, str]) -> str:
    return json.dumps(
        {"members": list(members), "types": [types[m] for m in members], "size": len(members)},
        separators=(", ", ": "),
    )


def write_cliques(path: str | Path, cliques: Iterable[Sequence[str]], types: Mapping[str, str], config: Mapping[str, Any]) -> None:
    _write(path, config, (clique_record(c, types) for c in cliques))


def read_cliques(path: str | Path) -> tuple[list[tuple[str, ...]], dict[str, str], dict[str, Any]]:
    """Return ``(cliques, id -> type, header config)``."""
    config, body = _split_header(_read_lines(path))
    cliques, types = [], {}
    for lineno, line in body:
        try:
            rec = json.loads(line)
            members = [str(m) for m in rec["members"]]
            labels = [str(t) for t in rec["types"]]
        except (json.JSONDecodeError, KeyError, TypeError):
            raise InputError(f"line {lineno}: malformed clique record") from None
        if len(members) != len(labels):
            raise InputError(f"line {lineno}: members and types differ in length")
        for m, t in zip(members, labels):
            if types.setdefault(m, t) != t:
                raise InputError(f"line {lineno}: object {m!r} has conflicting types")
        cliques.append(tuple(members))
    return cliques, types, config


def write_histogram(path: str | Path, histogram: Mapping[int, int], config: Mapping[str, Any]) -> None:
    _write(path, config, ["cardinality,count", *(f"{k},{v}" for k, v in sorted(histogram.items()))])


# -- transactions ---------------------------------------------------------

def write_transactions(path: str | Path, relations: Iterable[ComplexRelationship], config: Mapping[str, Any]) -> None:
    _write(path, config, (r.render() for r in relations))


def read_transactions(path: str | Path) -> tuple[list[ComplexRelationship], dict[str, Any]]:
    config, body = _split_header(_read_lines(path))
    out = []
    for lineno, line in body:
        try:
            items = frozenset(Item.parse(tok) for tok in line.split())
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        out.append(ComplexRelationship(items, len(out)))
    return out, config


# -- patterns -------------------------------------------------------------

def write_patterns(path: str | Path, patterns: Iterable[InterestingPattern], config: Mapping[str, Any]) -> None:
    _write(
        path,
        config,
        ["items,support,minpi", *(f"{p.render_items()},{p.support},{p.minpi:.6f}" for p in patterns)],
    )


def read_patterns(path: str | Path) -> tuple[list[tuple[tuple[str, ...], int, float]], dict[str, Any]]:
    config, body = _split_header(_read_lines(path))
    rows = []
    for lineno, line in body[1:]:
        try:
            items, sup, mp = line.split(",")
            rows.append((tuple(items.split(";")), int(sup), float(mp)))
        except ValueError:
            raise InputError(f"line {lineno}: malformed pattern row") from None
    return rows, config


def write_table(path: str | Path | TextIO, columns: Sequence[str], rows: Iterable[Sequence[Any]], config: Mapping[str, Any]) -> None:
    lines = [",".join(columns), *(",".join(str(v) for v in r) for r in rows)]
    if hasattr(path, "write"):
        path.write(header_line(config))
        for line in lines:
            path.write(line + "\n")
    else:
        _write(path, config, lines)
