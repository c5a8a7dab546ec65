"""Figure rendering for negbudget run directories."""

from .render import FIGURE_IDS, FigureSpec, SchemaError, render

__version__ = "0.1.0"
