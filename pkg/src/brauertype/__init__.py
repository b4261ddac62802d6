"""Diagram monoids of Brauer type: the partition monoid and its submonoids
(symmetric group, symmetric inverse, Brauer, partial Brauer, dual symmetric
inverse and its factorizable part), with presentations and canonical forms."""

from .diagrams import Diagram, MonoidFamily, multiply, parse, format_text
from .errors import BrauerError

__all__ = ["Diagram", "MonoidFamily", "multiply", "parse", "format_text", "BrauerError"]
__version__ = "0.1.0"
