"""Exact verification workbench for NRS(2) on cubics."""

__version__ = "0.1.0"
