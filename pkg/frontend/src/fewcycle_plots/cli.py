"""Console entry points: plot_heatmap and plot_series."""

import sys

from .render import PlotSpec, render_heatmap, render_timeseries
from .surface import PlotError


def _parse(argv, flags):
    if argv and argv[0] in ("-h", "--help"):
        raise PlotError("flags: " + " ".join(f"--{f} VALUE" for f in sorted(flags)))
    got = {}
    i = 0
    while i < len(argv):
        tok = argv[i]
        if not tok.startswith("--") or tok[2:] not in flags:
            raise PlotError(f"unknown flag {tok!r}")
        if i + 1 >= len(argv):
            raise PlotError(f"missing value for {tok}")
        got[tok[2:]] = argv[i + 1]
        i += 2
    return got


def _number(got, key, default):
    try:
        return float(got.get(key, default))
    except ValueError:
        raise PlotError(f"bad value for --{key}: {got[key]!r}") from None


def main_heatmap(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        got = _parse(argv, {"in", "method", "level", "out", "vmin", "vmax", "xlabel", "ylabel"})
        if "in" not in got:
            raise PlotError("plot_heatmap requires --in surface.csv")
        spec = PlotSpec(
            in_csv=got["in"],
            method=got.get("method", "finf"),
            limits=(_number(got, "vmin", 0.0), _number(got, "vmax", 30.0)),
            level=_number(got, "level", 0.10),
            out=got.get("out", "heatmap.png"),
            **{k: got[k] for k in ("xlabel", "ylabel") if k in got},
        )
        render_heatmap(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main_series(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        got = _parse(argv, {"in", "cols", "out"})
        if "in" not in got:
            raise PlotError("plot_series requires --in run.csv")
        cols = [c.strip() for c in got.get("cols", "f").split(",") if c.strip()]
        render_timeseries(got["in"], cols, got.get("out", "series.png"))
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main_heatmap())
