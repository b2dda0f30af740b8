"""polypack: approximation solvers for packing rotatable convex polygons
into a square knapsack."""
from .geometry import ConvexPolygon, Placement, Rect, DegenerateInput
from .model import Instance, PackingSolution, SolverConfig, validate_solution

__version__ = "0.1.0"

__all__ = ["ConvexPolygon", "Placement", "Rect", "DegenerateInput", "Instance",
           "PackingSolution", "SolverConfig", "validate_solution", "__version__"]
