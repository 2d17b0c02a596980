"""Decide and certify the orientation Ramsey relation G -> H for small graphs."""

from .density import degeneracy, max_2_density, max_density
from .graph import Graph, Orientation, blocks_of, contains_oriented
from .io import parse_graph, serialize

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Orientation",
    "blocks_of",
    "contains_oriented",
    "degeneracy",
    "max_2_density",
    "max_density",
    "parse_graph",
    "serialize",
]
