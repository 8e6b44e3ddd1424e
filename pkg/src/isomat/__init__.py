"""Isotropic matroids of looped simple graphs, sheltering matroids, and local equivalence."""

from importlib.resources import files

from .errors import CapExceeded, IsomatError, ParseError
from .gf2 import Gf2Matrix, rank
from .graph import GraphMove, LoopedGraph, parse_lsg
from .isotropic import CompatibleIso, GroundElement, build_ias
from .matroid import BinaryMatroid

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a bundled fixture (``c5.lsg``, ``bouchet_duchamp.mat``, ...)."""
    return files(__package__) / "data" / name


def load_graph(name: str) -> LoopedGraph:
    return parse_lsg(data_path(name).read_text())


__all__ = ["BinaryMatroid", "CapExceeded", "CompatibleIso", "Gf2Matrix", "GraphMove", "GroundElement",
           "IsomatError", "LoopedGraph", "ParseError", "build_ias", "data_path", "load_graph", "parse_lsg",
           "rank"]
