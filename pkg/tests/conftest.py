import numpy as np
import pytest

from gcgmine import PointSet, example_points

# Worked example: ids, types and coordinates of the ten-object 2-D dataset.
EXAMPLE_COORDS = {
    "A1": (2.5, 4.5), "A2": (6, 4), "A3": (2, 9),
    "B1": (1.5, 3.5), "B2": (5, 3), "B3": (5, 4),
    "C1": (2.5, 3), "C2": (6, 3),
    "D1": (3, 9), "D2": (7, 1.5),
}
EXAMPLE_TAU = 2.0
EXAMPLE_CLIQUES = {
    frozenset({"A1", "B1", "C1"}),
    frozenset({"A3", "D1"}),
    frozenset({"A2", "B2", "B3", "C2"}),
    frozenset({"C2", "D2"}),
}


@pytest.fixture
def example():
    return example_points()


def random_points(rng, n, dims, mean_degree=2.0, tau=1.0, n_types=3):
    """Uniform points in a cube sized so each point has ~mean_degree neighbours."""
    ball = np.pi * tau**2 if dims == 2 else 4.0 / 3.0 * np.pi * tau**3
    side = (max(n, 1) * ball / max(mean_degree, 1e-9)) ** (1.0 / dims)
    coords = rng.uniform(-side / 2, side / 2, size=(n, dims))
    types = tuple("ABCDEFG"[k] for k in rng.integers(0, n_types, size=n))
    return PointSet(tuple(f"p{i}" for i in range(n)), types, coords)
