"""Manifold-presentation text format, loader and command dispatch."""

from .parser import ManifoldDoc, parse, parse_poly, parse_vector
from .printer import print_doc

__all__ = ["ManifoldDoc", "parse", "parse_poly", "parse_vector", "print_doc"]
