"""Readers for the solver's CSV outputs.

This package talks to the solver only through files, so the two formats
are parsed here on their own: lines starting with `#` are comments, the
first remaining line is the header, and sweep rows are row-major with
the omega0_ratio column varying fastest.
"""

import numpy as np


class PlotError(Exception):
    """Bad input file or plot spec; reported on stderr with exit code 2."""


def _read_rows(path):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh if not ln.startswith("#")]
    except OSError as exc:
        raise PlotError(f"cannot read {path}: {exc}") from None
    if not lines:
        raise PlotError(f"{path} is empty")
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:] if ln]
    for row in rows:
        if len(row) != len(header):
            raise PlotError(f"{path} has a ragged row")
    return header, rows


def _column(header, rows, name, path):
    if name not in header:
        raise PlotError(f"{path} lacks column {name!r}")
    i = header.index(name)
    try:
        return np.array([float(r[i]) for r in rows], dtype=np.float64)
    except ValueError:
        raise PlotError(f"{path} has a non-numeric cell in column {name!r}") from None


def read_surface(path, column):
    """Grid a sweep CSV: returns (x_axis, y_axis, values[ny, nx])."""
    header, rows = _read_rows(path)
    xs = _column(header, rows, "omega0_ratio", path)
    ys = _column(header, rows, "omegac_ratio", path)
    vals = _column(header, rows, column, path)
    if xs.size == 0:
        raise PlotError(f"{path} has no data rows")
    nx = xs.size
    for i in range(1, xs.size):
        if xs[i] == xs[0]:
            nx = i
            break
    if xs.size % nx:
        raise PlotError(f"{path} rows do not form a full grid")
    ny = xs.size // nx
    x_axis = xs[:nx]
    y_axis = ys[::nx]
    if not (np.array_equal(np.tile(x_axis, ny), xs) and np.array_equal(np.repeat(y_axis, nx), ys)):
        raise PlotError(f"{path} is not row-major over the grid")
    return x_axis, y_axis, vals.reshape(ny, nx)


def read_series(path, names):
    """Pull complex trajectories out of a simulate CSV.

    `"f"` selects the integrated ratio (re_f/im_f); any other name picks
    the method pair re_f_<name>/im_f_<name>.
    """
    header, rows = _read_rows(path)
    t = _column(header, rows, "t", path)
    series = {}
    for name in names:
        stem = "f" if name == "f" else f"f_{name}"
        re = _column(header, rows, f"re_{stem}", path)
        im = _column(header, rows, f"im_{stem}", path)
        series[name] = re + 1j * im
    return t, series
