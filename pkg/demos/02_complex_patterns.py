# %% [markdown]
# # From cliques to complex relationships to interesting patterns
#
# Each maximal clique becomes a transaction over items "T" (type present),
# "T+" (two or more of that type) and "-T" (type absent).  We then mine
# itemsets whose support and minPI clear their thresholds.

# %%
from gcgmine import TransactionDB, brute_force_itemsets, generate_synthetic, mine_cliques, mine_interesting
from gcgmine.relations import relationships_from_cliques

types = {"A1": "A", "A2": "A", "A3": "A", "B": "B", "B1": "B", "B2": "B", "B3": "B", "C1": "C"}
cliques = [("A3", "B1", "B2", "B3"), ("B1", "C1"), ("A1", "A2", "B")]
relations = relationships_from_cliques(cliques, types, {"A", "B", "C"})
for c, r in zip(cliques, relations):
    print(c, "->", r.render())

db = TransactionDB.from_transactions(relations)
for p in mine_interesting(db, min_support=2):
    print(p.render_items(), p.support, round(p.minpi, 3))
assert mine_interesting(db, 2) == brute_force_itemsets(db, 2)

# %% A synthetic field with three types, one of them rare.
points = generate_synthetic(20_000, [30, 30, 30], {"A": 0.6, "B": 0.3, "C": 0.1}, seed=2)
result = mine_cliques(points, 1.0)
tx = relationships_from_cliques(result.cliques, dict(zip(points.ids, points.types)))
db = TransactionDB.from_transactions(tx)
patterns = mine_interesting(db, min_support=50, min_minpi=0.3)
print(len(result.cliques), "cliques,", len(patterns), "patterns")
for p in patterns[-10:]:
    print(f"{p.render_items():20s} support={p.support:6d} minPI={p.minpi:.3f}")
