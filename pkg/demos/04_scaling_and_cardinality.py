# %% [markdown]
# # Runtime scaling and clique sizes on uniform data
#
# Points are uniform at a fixed density (about two neighbours per point at
# tau = 1 Mpc), so doubling n doubles the box volume.  The grid keeps work per
# point roughly constant, so runtime should grow about linearly.  Small cliques
# dominate the size distribution.

# %%
import numpy as np

from gcgmine import cardinality_histogram, generate_synthetic, mine_cliques
from gcgmine.bench import box_side, run_bench

density = 2.0 / (4.0 / 3.0 * np.pi)
rows = run_bench([10_000, 20_000, 40_000], [1.0, 1.25], density, dims=3, seed=1)
print("n,tau,wall_ms,cliques")
for r in rows:
    print(f"{r.n},{r.tau},{r.wall_ms:.0f},{r.clique_count}")

# %%
n = 50_000
points = generate_synthetic(n, [box_side(n, density, 3)] * 3, {"A": 1.0}, seed=5)
hist = cardinality_histogram(mine_cliques(points, 1.0).cliques)
for size, count in hist.items():
    print(f"{size:2d} {count:7d} " + "#" * max(1, int(60 * count / max(hist.values()))))
