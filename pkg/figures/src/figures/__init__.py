"""Rendering of benchmark result CSV files into publication-style
figures. The package consumes only the CSV schemas emitted by the
`sphericity` command line tool; it never recomputes statistics.
"""

from .errors import FigureError, MissingColumnError
from .render import FIGURE_IDS, FigureSpec, render

__version__ = "0.1.0"

__all__ = ["FIGURE_IDS", "FigureError", "FigureSpec", "MissingColumnError",
           "render"]
