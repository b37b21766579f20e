"""Exact computations with Jacobi diagrams on strands, forests and trees."""

from .diagram import Diagram, StructureError, stack, stack_all

__version__ = "0.1.0"

__all__ = ["Diagram", "StructureError", "stack", "stack_all", "__version__"]
