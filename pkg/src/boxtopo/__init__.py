"""Topological descriptors of colored graphs and their box products."""

__version__ = "0.1.0"
