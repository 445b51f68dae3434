"""Torus surgery on 4-manifolds: fundamental groups, invariants and type change loci."""

__version__ = "0.1.0"
