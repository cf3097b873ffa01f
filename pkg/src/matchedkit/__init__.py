"""Elementary ideals of bipartite knots from signed chord diagrams."""

__version__ = "0.1.0"
