"""Figures from the fewcycle solver's CSV outputs."""

from .render import PlotSpec, render_heatmap, render_timeseries
from .surface import PlotError, read_series, read_surface

__version__ = "0.1.0"

__all__ = [
    "PlotError",
    "PlotSpec",
    "read_series",
    "read_surface",
    "render_heatmap",
    "render_timeseries",
]
