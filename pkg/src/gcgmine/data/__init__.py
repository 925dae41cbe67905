"""Bundled example datasets."""

from importlib.resources import as_file, files

from ..core import PointSet

EXAMPLE_2D = "grid_example_2d.csv"


def example_points() -> PointSet:
    """The ten-object 2-D worked example (types A-D); its cliques are meant for tau = 2."""
    from ..io import read_points

    with as_file(files(__name__).joinpath(EXAMPLE_2D)) as path:
        return read_points(path)[0]
