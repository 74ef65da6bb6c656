"""Figure rendering from cohtrap CSV + manifest tables.

This package reads only the CSV values and the accompanying JSON manifest;
it never recomputes model quantities, so the datasets stay renderable after
the producing binary is gone.
"""

from .render import FigureRequest, SchemaError, render

__version__ = "0.1.0"

__all__ = ["FigureRequest", "SchemaError", "render", "__version__"]
