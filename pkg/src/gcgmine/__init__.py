"""Grid-based maximal clique mining and complex co-location pattern mining."""

__version__ = "0.1.0"

# ruff: noqa: E402, F401

from .core import (
    InputError,
    InvariantError,
    NeighborGraph,
    PointSet,
    SpatialObject,
    edge_count,
    euclidean_distance,
    is_complete,
)
from .grid import GridIndex, build_index, candidate_neighbors, neighbor_cells
from .cliques import (
    CliqueSet,
    NeighborhoodList,
    brute_force_maximal_cliques,
    build_neighborhoods,
    cardinality_histogram,
    faithful_prune,
    mine_cliques,
    mine_maximal_cliques,
)
from .ingest import (
    CatalogRow,
    HubbleParams,
    categorize_galaxy,
    comoving_distance,
    filter_row,
    generate_synthetic,
    to_cartesian,
)
from .relations import ComplexRelationship, Item, Polarity, extract_relationship, strip_identifiers
from .itemsets import (
    InterestingPattern,
    TransactionDB,
    brute_force_itemsets,
    min_pi,
    mine_interesting,
    support,
)
from .data import example_points
