"""Partition dimension of graphs, with tooling for coronas of complete graphs and wheels."""

__version__ = "0.1.0"
