"""Heatmap and time-series figures from solver CSVs.

Rendering is write-only: input files are never modified and the plotted
numbers are exactly the parsed CSV values (errors are rescaled to percent
for the color axis, nothing else is transformed).
"""

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .surface import PlotError, read_series, read_surface

_COLUMNS = {
    "f0": "err_f0",
    "f1closed": "err_f1_closed",
    "f1exact": "err_f1_exact",
    "finf": "err_finf",
}


@dataclass(frozen=True)
class PlotSpec:
    """One heatmap: where to read, which error column, how to scale."""

    in_csv: str
    method: str = "finf"
    limits: tuple = (0.0, 30.0)  # color scale in percent
    level: float = 0.10
    out: str = "heatmap.png"
    xlabel: str = "peak Rabi frequency / carrier frequency"
    ylabel: str = "transition frequency / carrier frequency"

    def __post_init__(self):
        if self.method not in _COLUMNS:
            raise PlotError(f"unknown method {self.method!r} (choose from {', '.join(_COLUMNS)})")
        if not 0.0 < self.level < 1.0:
            raise PlotError("level must be in (0, 1)")
        lo, hi = self.limits
        if not lo < hi:
            raise PlotError("limits must be (low, high) with low < high")


def _edges(axis):
    # pcolormesh wants cell boundaries; reconstruct them from centers
    if axis.size == 1:
        w = 0.1 * max(1.0, abs(axis[0]))
        return np.array([axis[0] - w, axis[0] + w])
    mids = 0.5 * (axis[1:] + axis[:-1])
    first = 2.0 * axis[0] - mids[0]
    last = 2.0 * axis[-1] - mids[-1]
    return np.concatenate([[first], mids, [last]])


def render_heatmap(spec: PlotSpec):
    """Write the percent-error raster with the level contour overlaid.

    Returns the contour polylines in data coordinates (a list of (n, 2)
    arrays), which is empty when the surface never crosses the level or
    the grid is a single row or column.
    """
    x, y, err = read_surface(spec.in_csv, _COLUMNS[spec.method])
    pct = np.ma.masked_invalid(100.0 * err)
    fig, ax = plt.subplots(figsize=(5.2, 4.2), constrained_layout=True)
    mesh = ax.pcolormesh(
        _edges(x),
        _edges(y),
        pct,
        cmap="viridis",
        vmin=spec.limits[0],
        vmax=spec.limits[1],
        shading="flat",
    )
    fig.colorbar(mesh, ax=ax, label="percent error")
    polylines = []
    if x.size >= 2 and y.size >= 2:
        cs = ax.contour(
            x, y, np.ma.masked_invalid(err), levels=[spec.level], colors="black", linewidths=1.2
        )
        polylines = [np.asarray(seg) for seg in cs.allsegs[0] if len(seg) >= 2]
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.method)
    fig.savefig(spec.out, dpi=150)
    plt.close(fig)
    return polylines


def render_timeseries(in_csv: str, columns, out: str) -> str:
    """Overlay real and imaginary parts of the selected trajectories."""
    columns = list(columns)
    if not columns:
        raise PlotError("no columns requested")
    t, series = read_series(in_csv, columns)
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.0), constrained_layout=True)
    for name in columns:
        z = series[name]
        label = "exact" if name == "f" else name
        ax_re.plot(t, z.real, label=label)
        ax_im.plot(t, z.imag, label=label)
    ax_re.set_ylabel("Re f")
    ax_im.set_ylabel("Im f")
    ax_im.set_xlabel("t")
    ax_re.legend(loc="best", fontsize="small")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
