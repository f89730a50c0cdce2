"""Decorated marked surfaces with vortices: triangulations, exchange graphs, quivers and braid twist presentations."""

from .surface import AbelianGroupInvariants, MarkedSurfaceSpec, h1_punctured, h1_vortex
from .triangulation import SignedTriangulation, flip, normalize, seed_triangulation
from .exchange import ExchangeGraph, enumerate_graph
from .quiver import Potential, Quiver, mutate, potential_of, quiver_of
from .engine import Braid, PlanarModel
from .presentations import GroupPresentation, abelianization

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupInvariants", "MarkedSurfaceSpec", "h1_punctured", "h1_vortex",
    "SignedTriangulation", "flip", "normalize", "seed_triangulation",
    "ExchangeGraph", "enumerate_graph",
    "Potential", "Quiver", "mutate", "potential_of", "quiver_of",
    "Braid", "PlanarModel",
    "GroupPresentation", "abelianization",
]
