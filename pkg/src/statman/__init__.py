"""Exact curvature, soliton and submanifold checks for statistical manifolds given by frames."""

from .dsl.commands import run_command
from .dsl.model import load
from .dsl.parser import parse
from .errors import ParseError, StatmanError, StructuralError
from .report import Check, Report, emit

__version__ = "0.1.0"

__all__ = [
    "Check",
    "ParseError",
    "Report",
    "StatmanError",
    "StructuralError",
    "emit",
    "load",
    "parse",
    "run_command",
    "__version__",
]
