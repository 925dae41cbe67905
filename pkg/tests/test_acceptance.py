"""Exit criteria for the build, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with ``-s`` or in
the terminal summary of ``pytest -v``).
"""

import random
import time
from decimal import Decimal

import numpy as np
import pytest

from gcgmine import (
    Item, NeighborGraph, TransactionDB, brute_force_itemsets, brute_force_maximal_cliques,
    cardinality_histogram, categorize_galaxy, comoving_distance, edge_count, extract_relationship,
    generate_synthetic, min_pi, mine_cliques, mine_interesting, strip_identifiers, support,
)
from gcgmine.bench import box_side, run_bench
from gcgmine.cli import main
from gcgmine.ingest import CATALOG_COLUMNS

from conftest import EXAMPLE_CLIQUES, random_points
from test_cli import EXAMPLE
from test_cliques import EXAMPLE_LISTS


@pytest.fixture
def verdict(capsys):
    def report(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] AC{criterion}: {detail}")
        assert ok, f"AC{criterion} failed: {detail}"
    return report


def test_ac1_worked_example(tmp_path, verdict):
    from gcgmine import io
    from gcgmine.cliques import build_neighborhoods
    from gcgmine.grid import build_index

    out = tmp_path / "cliques.jsonl"
    start = time.perf_counter()
    code = main(["mine-cliques", str(EXAMPLE), "-o", str(out), "--tau", "2"])
    elapsed = time.perf_counter() - start
    cliques = {frozenset(c) for c in io.read_cliques(out)[0]}
    pts = io.read_points(EXAMPLE)[0]
    lists = {nl.ids(pts)[0]: set(nl.ids(pts)) for nl in build_neighborhoods(pts, build_index(pts, 2.0))}
    ok = code == 0 and cliques == EXAMPLE_CLIQUES and lists == EXAMPLE_LISTS and elapsed < 1.0
    verdict(1, ok, f"4 cliques exact={cliques == EXAMPLE_CLIQUES}, 10 lists exact={lists == EXAMPLE_LISTS}, {elapsed:.3f}s < 1s")


def test_ac2_relationship_rules(verdict):
    types = {"A1": "A", "A2": "A", "A3": "A", "B": "B", "B1": "B", "B2": "B", "B3": "B", "C1": "C"}
    cliques = [("A3", "B1", "B2", "B3"), ("B1", "C1"), ("A1", "A2", "B")]
    expected = ["A B B+ -C", "-A B C", "A A+ B -C"]
    got = [extract_relationship(strip_identifiers(c, types), {"A", "B", "C"}).items for c in cliques]
    want = [frozenset(Item.parse(t) for t in e.split()) for e in expected]
    verdict(2, got == want, "three cliques -> three transactions, exact")


def test_ac3_clique_oracle_equivalence(verdict):
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    instances = discrepancies = 0
    for n in (10, 25, 50, 100, 150, 200):
        for dims in (2, 3):
            for degree in (0.25, 1.0, 3.0, 8.0, 15.0):
                for _ in range(4):
                    pts = random_points(rng, n, dims, degree)
                    mined = mine_cliques(pts, 1.0).cliques
                    oracle = brute_force_maximal_cliques(NeighborGraph.all_pairs(pts, 1.0))
                    instances += 1
                    discrepancies += mined.as_sets() != oracle.as_sets()
    elapsed = time.perf_counter() - start
    ok = instances >= 200 and discrepancies == 0 and elapsed < 120
    verdict(3, ok, f"{instances} instances, {discrepancies} discrepancies, {elapsed:.1f}s < 120s")


def test_ac4_itemset_oracle_equivalence(verdict):
    rng = random.Random(7)
    pool = [Item.parse(t) for t in "A A+ -A B B+ -B C C+ -C D D+ -D".split()]
    dbs = discrepancies = 0
    worst = 0.0
    for _ in range(120):
        k = rng.randint(1, 12)
        items = rng.sample(pool, k)
        density = rng.uniform(0.1, 0.9)
        db = TransactionDB.from_transactions(
            frozenset(i for i in items if rng.random() < density) for _ in range(rng.randint(0, 30))
        )
        dbs += 1
        for ms in (1, 2, 3, 5):
            for mp in (0.0, 0.25, 0.5, 0.75, 1.0):
                got = mine_interesting(db, ms, mp)
                want = brute_force_itemsets(db, ms, mp)
                if [(p.items, p.support) for p in got] != [(p.items, p.support) for p in want]:
                    discrepancies += 1
                    continue
                for a, b in zip(got, want):
                    worst = max(worst, abs(a.minpi - b.minpi))
    ok = dbs >= 100 and discrepancies == 0 and worst <= 1e-12
    verdict(4, ok, f"{dbs} dbs x 20 thresholds, {discrepancies} discrepancies, max |dminPI|={worst:.1e}")


def test_ac5_formulas(verdict):
    e = edge_count(22)
    d = comoving_distance(0.1)
    ok = e == 231 and abs(d - 422.2429) <= 1e-3
    verdict(5, ok, f"edge_count(22)={e}, comoving_distance(0.1)={d:.6f} Mpc")


def test_ac6_anti_monotone(verdict):
    rng = random.Random(99)
    pool = [Item.parse(t) for t in "A A+ -A B B+ -B C C+ -C D D+ -D".split()]
    pairs = violations = 0
    while pairs < 10_000:
        db = TransactionDB.from_transactions(
            frozenset(i for i in pool if rng.random() < 0.5) for _ in range(rng.randint(1, 40))
        )
        present = db.items
        if not present:
            continue
        for _ in range(100):
            big = rng.sample(present, rng.randint(1, len(present)))
            small = rng.sample(big, rng.randint(1, len(big)))
            pairs += 1
            if support(big, db) > support(small, db) or min_pi(big, db) > min_pi(small, db):
                violations += 1
    verdict(6, violations == 0, f"{pairs} pairs, {violations} violations")


def test_ac7_scaling_shape(verdict):
    start = time.perf_counter()
    # mean ~2 neighbours per point at tau = 1 Mpc in 3-D
    density = 2.0 / (4.0 / 3.0 * np.pi)
    rows = run_bench([10_000, 20_000, 40_000, 80_000], [1.0], density, dims=3, seed=3, repeats=3)
    ratios = [b.wall_ms / a.wall_ms for a, b in zip(rows, rows[1:])]
    elapsed = time.perf_counter() - start
    ok = all(r < 4 for r in ratios) and elapsed < 300
    verdict(7, ok, "ratios " + ", ".join(f"{r:.2f}" for r in ratios) + f" (< 4), bench {elapsed:.1f}s")


def test_ac8_histogram_shape(verdict):
    n = 60_000
    density = 2.0 / (4.0 / 3.0 * np.pi)
    pts = generate_synthetic(n, [box_side(n, density, 3)] * 3, {"A": 0.5, "B": 0.5}, 8)
    res = mine_cliques(pts, 1.0)
    mean_deg = sum(len(a) for a in res.graph.adjacency) / n
    hist = cardinality_histogram(res.cliques)
    counts = [hist.get(k, 0) for k in range(2, 6)]
    ok = all(a >= b for a, b in zip(counts, counts[1:])) and 1.5 <= mean_deg <= 2.5
    verdict(8, ok, f"mean degree {mean_deg:.2f}, counts 2..5 = {counts}")


def test_ac9_determinism(tmp_path, verdict):
    rng = np.random.default_rng(1)
    lines = [",".join(CATALOG_COLUMNS)]
    for k in range(3000):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        lines.append(",".join(map(str, [k, rng.uniform(0.001, 0.004), 0, 0, *v, int(rng.random() < 0.1),
                                          rng.uniform(17, 22), rng.uniform(15, 19), rng.uniform(0, 1), 0])))
    (tmp_path / "catalog.csv").write_text("\n".join(lines) + "\n")

    def stage(run, threads):
        d = tmp_path / run
        d.mkdir()
        t = ["--threads", str(threads)]
        assert main(["ingest", str(tmp_path / "catalog.csv"), "-o", str(d / "points.csv")]) == 0
        assert main(["synth", "-o", str(d / "synth.csv"), "--n", "5000", "--extent", "20", "--seed", "4"]) == 0
        assert main(["mine-cliques", str(d / "points.csv"), "-o", str(d / "cliques.jsonl"), "--tau", "1.5", *t]) == 0
        assert main(["mine-cliques", str(d / "synth.csv"), "-o", str(d / "synth_cliques.jsonl"), "--tau", "1", *t]) == 0
        assert main(["extract-relations", str(d / "synth_cliques.jsonl"), "-o", str(d / "tx.txt")]) == 0
        assert main(["mine-patterns", str(d / "tx.txt"), "-o", str(d / "patterns.csv"), *t]) == 0
        assert main(["stats", str(d / "synth_cliques.jsonl"), "-o", str(d / "stats.csv")]) == 0
        return {p.name: p.read_bytes() for p in sorted(d.iterdir())}

    first, second, eight = stage("a", 1), stage("b", 1), stage("c", 8)
    cliques = first["cliques.jsonl"].count(b"\n") - 1
    ok = first == second == eight and cliques > 0
    verdict(9, ok, f"{len(first)} stage outputs byte-identical across 2 runs and 1 vs 8 workers")


def test_ac10_categorisation_grid(verdict):
    # exact decimal grid straddling both cuts
    ok = True
    checked = 0
    for r100 in range(1700, 1860):
        for c100 in range(200, 240):
            r = Decimal(r100) / 100
            color = Decimal(c100) / 100
            u = r + color
            label = categorize_galaxy(float(u), float(r))
            want = ("Main" if r <= Decimal("17.77") else "LRG") + "-" + ("Early" if color >= Decimal("2.22") else "Late")
            ok &= label == want
            checked += 1
    verdict(10, ok, f"{checked} grid points split exactly at u-r=2.22 and r=17.77")
