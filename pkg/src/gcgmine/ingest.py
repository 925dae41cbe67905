"""Catalog ingestion and synthetic point generation.

Catalog rows follow the SDSS SpecPhoto export columns.  Distances come from
Hubble's law ``D = c z / H0`` and Cartesian coordinates from scaling the
row's unit direction vector by ``D``.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, TextIO

import numpy as np

from .core import InputError, PointSet, validate_type_label

log = logging.getLogger(__name__)

SPEED_OF_LIGHT_KM_S = 299792.458
DEFAULT_H0 = 71.0
EARLY_COLOR_CUT = 2.22  # u - r at or above this is Early
MAIN_R_LIMIT = 17.77  # r at or below this is Main
COLOR_DECIMALS = 9
ZCONF_CUT = 0.95
UNIT_NORM_TOL = 1e-6

CATALOG_COLUMNS = (
    "specObjID", "z", "ra", "dec", "cx", "cy", "cz",
    "objType", "modelMag_u", "modelMag_r", "zConf", "zWarning",
)
GALAXY_TYPES = ("Main-Late", "Main-Early", "LRG-Late", "LRG-Early")


@dataclass(frozen=True)
class HubbleParams:
    c: float = SPEED_OF_LIGHT_KM_S
    h0: float = DEFAULT_H0

    def __post_init__(self) -> None:
        if not (self.c > 0 and self.h0 > 0):
            raise InputError("c and h0 must be positive")


@dataclass(frozen=True)
class CatalogRow:
    specObjID: str
    z: float
    ra: float
    dec: float
    cx: float
    cy: float
    cz: float
    objType: int
    modelMag_u: float
    modelMag_r: float
    zConf: float
    zWarning: int

    @classmethod
    def from_mapping(cls, rec: Mapping[str, str]) -> CatalogRow:
        ints = {"objType", "zWarning"}
        values = {}
        for name in CATALOG_COLUMNS:
            raw = rec.get(name)
            if raw is None or raw.strip() == "":
                raise ValueError(f"missing value for {name}")
            raw = raw.strip()
            if name == "specObjID":
                values[name] = raw
            elif name in ints:
                values[name] = int(float(raw))
            else:
                values[name] = float(raw)
        return cls(**values)


def comoving_distance(z: float, params: HubbleParams = HubbleParams()) -> float:
    """Distance in Mpc for redshift ``z``."""
    if not z >= 0:
        raise InputError(f"redshift must be non-negative, got {z!r}")
    return params.c * z / params.h0


def to_cartesian(row: CatalogRow, params: HubbleParams = HubbleParams()) -> tuple[float, float, float]:
    norm = math.sqrt(row.cx * row.cx + row.cy * row.cy + row.cz * row.cz)
    if not abs(norm - 1.0) <= UNIT_NORM_TOL:
        raise InputError(f"row {row.specObjID}: direction vector has norm {norm}")
    d = comoving_distance(row.z, params)
    return (d * row.cx, d * row.cy, d * row.cz)


def filter_row(row: CatalogRow, zconf_direction: str = "lt") -> bool:
    """Quality filter: galaxies only, no redshift warning, zConf cut.

    ``zconf_direction="lt"`` keeps rows with ``zConf < 0.95``; ``"ge"`` keeps
    ``zConf >= 0.95``.
    """
    if zconf_direction == "lt":
        zconf_ok = row.zConf < ZCONF_CUT
    elif zconf_direction == "ge":
        zconf_ok = row.zConf >= ZCONF_CUT
    else:
        raise InputError(f"zconf_direction must be 'lt' or 'ge', got {zconf_direction!r}")
    return row.objType == 0 and row.zWarning == 0 and zconf_ok


def categorize_galaxy(modelMag_u: float, modelMag_r: float) -> str:
    if not (math.isfinite(modelMag_u) and math.isfinite(modelMag_r)):
        raise InputError("magnitudes must be finite")
    # magnitudes are decimal catalog values; rounding keeps u - r == 2.22 on the cut
    color = "Early" if round(modelMag_u - modelMag_r, COLOR_DECIMALS) >= EARLY_COLOR_CUT else "Late"
    sample = "Main" if modelMag_r <= MAIN_R_LIMIT else "LRG"
    return f"{sample}-{color}"


@dataclass
class IngestReport:
    accepted: int = 0
    rejected: int = 0
    reasons: dict[str, int] = field(default_factory=dict)

    def reject(self, reason: str) -> None:
        self.rejected += 1
        self.reasons[reason] = self.reasons.get(reason, 0) + 1

    def summary(self) -> str:
        detail = ", ".join(f"{k}={v}" for k, v in sorted(self.reasons.items()))
        return f"accepted={self.accepted} rejected={self.rejected}" + (f" ({detail})" if detail else "")


def read_catalog(stream: TextIO) -> Iterator[tuple[int, CatalogRow]]:
    """Yield ``(line_number, row)`` for each data row; raises on malformed input."""
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        return
    missing = [c for c in CATALOG_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise InputError(f"line 1: catalog is missing columns {missing}")
    for rec in reader:
        try:
            yield reader.line_num, CatalogRow.from_mapping(rec)
        except (ValueError, TypeError) as exc:
            raise InputError(f"line {reader.line_num}: {exc}") from None


def ingest_rows(
    rows: Sequence[CatalogRow] | Iterator[CatalogRow],
    params: HubbleParams = HubbleParams(),
    zconf_direction: str = "lt",
) -> tuple[PointSet, IngestReport]:
    """Filter, transform and categorise catalog rows into a 3-D point set."""
    report = IngestReport()
    ids, types, coords = [], [], []
    for row in rows:
        if not filter_row(row, zconf_direction):
            report.reject("filtered")
            continue
        if not row.z >= 0:
            report.reject("negative_z")
            continue
        try:
            label = categorize_galaxy(row.modelMag_u, row.modelMag_r)
            xyz = to_cartesian(row, params)
        except InputError as exc:
            log.debug("rejecting %s: %s", row.specObjID, exc)
            report.reject("bad_magnitude" if "magnitude" in str(exc) else "bad_direction")
            continue
        ids.append(row.specObjID)
        types.append(label)
        coords.append(xyz)
        report.accepted += 1
    log.info("ingest: %s", report.summary())
    pts = PointSet(tuple(ids), tuple(types), np.array(coords, dtype=np.float64).reshape(-1, 3))
    return pts, report


def generate_synthetic(
    n: int,
    extent: Sequence[float],
    type_weights: Mapping[str, float],
    seed: int,
    clusters: int = 0,
    cluster_sigma: float = 1.0,
) -> PointSet:
    """Random typed points in the box ``[0, extent)``.

    Points are uniform unless ``clusters > 0``, in which case each point is
    drawn from an isotropic Gaussian around one of ``clusters`` uniformly
    placed centres.  Ids are "0".."n-1"; output depends only on the arguments.
    """
    if n < 0:
        raise InputError("n must be non-negative")
    extent = np.asarray(extent, dtype=np.float64)
    if extent.ndim != 1 or len(extent) not in (2, 3) or not (extent > 0).all():
        raise InputError("extent must give 2 or 3 positive box sides")
    labels = sorted(type_weights)
    weights = np.array([type_weights[t] for t in labels], dtype=np.float64)
    if not labels or (weights < 0).any() or abs(weights.sum() - 1.0) > 1e-9:
        raise InputError("type weights must be non-negative and sum to 1")
    for t in labels:
        validate_type_label(t)
    rng = np.random.default_rng(seed)
    dims = len(extent)
    if clusters > 0:
        centers = rng.uniform(0.0, 1.0, size=(clusters, dims)) * extent
        which = rng.integers(0, clusters, size=n)
        coords = centers[which] + rng.normal(0.0, cluster_sigma, size=(n, dims))
    else:
        coords = rng.uniform(0.0, 1.0, size=(n, dims)) * extent
    picks = rng.choice(len(labels), size=n, p=weights / weights.sum())
    return PointSet(
        tuple(str(i) for i in range(n)),
        tuple(labels[k] for k in picks),
        coords.reshape(n, dims),
    )
