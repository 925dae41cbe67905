import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gcgmine import InputError, NeighborGraph, PointSet, SpatialObject, edge_count, euclidean_distance, is_complete
from gcgmine.core import id_sort_key, pairwise_distances, validate_type_label

from conftest import EXAMPLE_COORDS, EXAMPLE_TAU


def obj(oid, *coords, t="A"):
    return SpatialObject(oid, t, coords)


def test_distance_identity():
    assert euclidean_distance(obj("a", 2.5, 4.5), obj("b", 2.5, 4.5)) == 0.0


def test_distance_worked_example_pairs():
    assert euclidean_distance(obj("A1", 2.5, 4.5), obj("C1", 2.5, 3)) == 1.5
    # sqrt(1 + 1.5**2) = sqrt(3.25)
    assert euclidean_distance(obj("D2", 7, 1.5), obj("C2", 6, 3)) == pytest.approx(1.8027756377319946, abs=1e-15)


def test_distance_dimension_mismatch():
    with pytest.raises(InputError):
        euclidean_distance(obj("a", 0, 0), obj("b", 0, 0, 0))


finite = st.floats(-1e6, 1e6, allow_nan=False)
point3 = st.tuples(finite, finite, finite)


@given(point3, point3, point3)
def test_triangle_inequality(a, b, c):
    pa, pb, pc = obj("a", *a), obj("b", *b), obj("c", *c)
    ab, bc, ac = euclidean_distance(pa, pb), euclidean_distance(pb, pc), euclidean_distance(pa, pc)
    assert ac <= ab + bc + 1e-9 * (1 + ab + bc)
    assert ab == euclidean_distance(pb, pa)


@given(st.lists(point3, min_size=2, max_size=8))
def test_vectorised_distance_matches_scalar(coords):
    arr = np.array(coords)
    src, dst = np.triu_indices(len(arr), k=1)
    fast = pairwise_distances(arr, src, dst)
    for k, (i, j) in enumerate(zip(src, dst)):
        assert fast[k] == euclidean_distance(obj("i", *coords[i]), obj("j", *coords[j]))


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 3), (22, 231)])
def test_edge_count_values(n, expected):
    assert edge_count(n) == expected


def test_edge_count_matches_pair_enumeration():
    for n in range(2, 101):
        assert edge_count(n) == sum(1 for _ in combinations(range(n), 2))


def test_edge_count_rejects_small():
    with pytest.raises(InputError):
        edge_count(1)


def example_graph():
    objs = [SpatialObject(k, k[0], v) for k, v in EXAMPLE_COORDS.items()]
    return NeighborGraph.all_pairs(PointSet.from_objects(objs), EXAMPLE_TAU)


def test_is_complete_examples():
    g = example_graph()
    assert is_complete(g, {"A1", "B1", "C1"})
    assert not is_complete(g, {"C2", "A2", "B2", "B3", "D2"})
    assert is_complete(g, {"A1"})
    with pytest.raises(InputError):
        is_complete(g, {"A1", "Z9"})


def test_graph_symmetric_irreflexive_closed():
    pts = PointSet(("a", "b", "c"), ("A", "A", "B"), np.array([[0.0, 0.0], [2.0, 0.0], [5.0, 0.0]]))
    g = NeighborGraph.all_pairs(pts, 2.0)
    assert g.adjacency[0] == {1} and g.adjacency[1] == {0}  # d == tau is an edge
    assert not g.adjacency[2]
    for a, nbrs in enumerate(g.adjacency):
        assert a not in nbrs
        assert all(a in g.adjacency[b] for b in nbrs)


@pytest.mark.parametrize("label", ["", "A+", "-A", "A B", "A;B", "#A"])
def test_reserved_labels_rejected(label):
    with pytest.raises(InputError):
        validate_type_label(label)


def test_compound_label_allowed():
    assert validate_type_label("Main-Early") == "Main-Early"


def test_pointset_validation():
    with pytest.raises(InputError):
        PointSet(("a", "a"), ("A", "A"), np.zeros((2, 2)))
    with pytest.raises(InputError):
        PointSet(("a",), ("A",), np.array([[math.inf, 0.0]]))
    with pytest.raises(InputError):
        PointSet.from_objects([obj("a", 0, 0), obj("b", 0, 0, 0)])


def test_natural_id_order():
    assert sorted(["A10", "A2", "B1", "A1"], key=id_sort_key) == ["A1", "A2", "A10", "B1"]
    assert sorted(["10", "9", "100"], key=id_sort_key) == ["9", "10", "100"]
