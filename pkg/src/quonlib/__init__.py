"""Exact quon (q-deformed) Fock-space algebra and statistics-violation tools."""

from .qpoly import QPoly

__all__ = ["QPoly"]
__version__ = "0.1.0"
