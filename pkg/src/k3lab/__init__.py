"""Exact lattice computations for the line configuration on a Humbert sextic K3 surface."""

__version__ = "0.1.0"
