# %% [markdown]
# # Ingesting a redshift catalog
#
# Rows carry a redshift and a unit direction vector.  Distance follows
# Hubble's law with H0 = 71 km/s/Mpc; colour and r-band magnitude split the
# galaxies into Main/LRG and Early/Late.  Here we fabricate a small catalog in
# the export's column layout and run it through the ingest stage.

# %%
import csv
import tempfile
from collections import Counter
from pathlib import Path

import numpy as np

from gcgmine.ingest import CATALOG_COLUMNS
from gcgmine.pipeline import PipelineConfig, ingest_stage, mine_cliques_stage

rng = np.random.default_rng(0)
workdir = Path(tempfile.mkdtemp())
catalog = workdir / "catalog.csv"
with open(catalog, "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(CATALOG_COLUMNS)
    for k in range(5000):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        ra = np.degrees(np.arctan2(v[1], v[0])) % 360
        dec = np.degrees(np.arcsin(v[2]))
        obj_type = 0 if rng.random() < 0.9 else 6
        w.writerow([1000 + k, rng.uniform(0.002, 0.01), ra, dec, *v, obj_type,
                    rng.uniform(17, 22), rng.uniform(14, 19), rng.uniform(0, 1), int(rng.random() < 0.05)])

points, summary = ingest_stage(catalog, workdir / "points.csv", PipelineConfig())
print(summary)
print(Counter(points.types))
print("distance range (Mpc):", np.linalg.norm(points.coords, axis=1).min().round(1),
      np.linalg.norm(points.coords, axis=1).max().round(1))

# %% The points file feeds the clique stage directly.
result = mine_cliques_stage(workdir / "points.csv", workdir / "cliques.jsonl", workdir / "hist.csv",
                            PipelineConfig(tau=2.0))
print(len(result.cliques), "cliques")
print((workdir / "hist.csv").read_text())
