import numpy as np
import pytest

from fewcycle_plots import PlotError, PlotSpec, render_heatmap, render_timeseries
from fewcycle_plots.cli import main_heatmap, main_series

ERR_COLS = "err_f0,err_f1_closed,err_f1_exact,err_finf"


def write_surface(path, xs, ys, err_fn):
    lines = [f"omega0_ratio,omegac_ratio,{ERR_COLS}"]
    for y in ys:
        for x in xs:
            e = err_fn(x, y)
            lines.append(f"{float(x)!r},{float(y)!r},{float(e)!r},{float(e)!r},{float(e)!r},{float(e)!r}")
    path.write_text("\n".join(lines) + "\n")


def write_series_csv(path, t, f, extras=None):
    extras = extras or {}
    header = "t,re_C,im_C,re_D,im_D,re_f,im_f,pop_c,masked"
    for name in extras:
        header += f",re_f_{name},im_f_{name}"
    lines = [header]
    for i, ti in enumerate(t):
        row = f"{float(ti)!r},0.0,0.0,1.0,0.0,{float(f[i].real)!r},{float(f[i].imag)!r},0.0,0"
        for name in extras:
            row += f",{float(extras[name][i].real)!r},{float(extras[name][i].imag)!r}"
        lines.append(row)
    path.write_text("\n".join(lines) + "\n")


def test_single_cell_surface_renders_without_contour(tmp_path):
    src = tmp_path / "surface.csv"
    write_surface(src, [0.1], [0.2], lambda x, y: 0.5)
    out = tmp_path / "one.png"
    polylines = render_heatmap(PlotSpec(in_csv=str(src), method="finf", out=str(out)))
    assert out.stat().st_size > 0
    assert polylines == []


def test_linear_ramp_contour_within_one_cell(tmp_path):
    src = tmp_path / "surface.csv"
    xs = np.linspace(0.02, 1.0, 40)
    write_surface(src, xs, np.linspace(0.1, 5.0, 8), lambda x, y: x)
    out = tmp_path / "ramp.png"
    polylines = render_heatmap(PlotSpec(in_csv=str(src), method="finf", level=0.10, out=str(out)))
    assert polylines
    cell = xs[1] - xs[0]
    pts = np.vstack(polylines)
    assert np.max(np.abs(pts[:, 0] - 0.10)) < cell


def test_four_panel_batch(tmp_path):
    src = tmp_path / "surface.csv"
    write_surface(src, np.linspace(0.02, 1.0, 12), np.linspace(0.1, 5.0, 10), lambda x, y: x * y)
    for method in ("f0", "f1closed", "f1exact", "finf"):
        out = tmp_path / f"panel_{method}.png"
        polylines = render_heatmap(PlotSpec(in_csv=str(src), method=method, out=str(out)))
        assert out.stat().st_size > 0
        assert polylines


def test_rendering_leaves_input_untouched(tmp_path):
    src = tmp_path / "surface.csv"
    write_surface(src, np.linspace(0.1, 1.0, 5), np.linspace(0.5, 2.0, 4), lambda x, y: x)
    before = src.read_bytes()
    render_heatmap(PlotSpec(in_csv=str(src), out=str(tmp_path / "h.png")))
    assert src.read_bytes() == before


def test_nan_cells_are_tolerated(tmp_path):
    src = tmp_path / "surface.csv"
    xs = np.linspace(0.1, 1.0, 6)
    write_surface(src, xs, np.linspace(0.5, 2.0, 5), lambda x, y: float("nan") if x < 0.3 else x)
    out = tmp_path / "holes.png"
    polylines = render_heatmap(PlotSpec(in_csv=str(src), level=0.5, out=str(out)))
    assert out.stat().st_size > 0
    assert polylines


def test_spec_validation():
    with pytest.raises(PlotError):
        PlotSpec(in_csv="x.csv", method="exact")
    with pytest.raises(PlotError):
        PlotSpec(in_csv="x.csv", level=1.5)
    with pytest.raises(PlotError):
        PlotSpec(in_csv="x.csv", limits=(10.0, 10.0))


def test_heatmap_cli_happy_path(tmp_path):
    src = tmp_path / "surface.csv"
    write_surface(src, np.linspace(0.02, 1.0, 10), np.linspace(0.1, 3.0, 6), lambda x, y: x)
    out = tmp_path / "fig.png"
    rc = main_heatmap(["--in", str(src), "--method", "finf", "--level", "0.10", "--out", str(out)])
    assert rc == 0
    assert out.exists()


def test_heatmap_cli_missing_column(tmp_path, capsys):
    src = tmp_path / "surface.csv"
    src.write_text("omega0_ratio,omegac_ratio,err_f0\n0.1,1.0,0.5\n")
    assert main_heatmap(["--in", str(src), "--method", "finf"]) == 2
    assert "err_finf" in capsys.readouterr().err


def test_heatmap_cli_rejects_unknown_flag(tmp_path, capsys):
    assert main_heatmap(["--in", "s.csv", "--palette", "magma"]) == 2
    assert "palette" in capsys.readouterr().err


def test_heatmap_cli_requires_input(capsys):
    assert main_heatmap(["--method", "finf"]) == 2


def test_series_exact_only(tmp_path):
    src = tmp_path / "run.csv"
    t = np.linspace(0.0, 6.0, 50)
    write_series_csv(src, t, np.exp(1j * t) * 0.1)
    out = tmp_path / "series.png"
    assert render_timeseries(str(src), ["f"], str(out)) == str(out)
    assert out.stat().st_size > 0


def test_series_zero_field_flat(tmp_path):
    src = tmp_path / "run.csv"
    t = np.linspace(0.0, 6.0, 30)
    write_series_csv(src, t, np.zeros(30, dtype=complex))
    out = tmp_path / "flat.png"
    render_timeseries(str(src), ["f"], str(out))
    assert out.stat().st_size > 0


def test_series_overlay_with_method(tmp_path):
    src = tmp_path / "run.csv"
    t = np.linspace(0.0, 6.0, 40)
    f = -1j * np.sin(0.1 * t)
    write_series_csv(src, t, f, extras={"finf": f * 1.01})
    out = tmp_path / "overlay.png"
    rc = main_series(["--in", str(src), "--cols", "f,finf", "--out", str(out)])
    assert rc == 0
    assert out.stat().st_size > 0


def test_series_cli_missing_column(tmp_path, capsys):
    src = tmp_path / "run.csv"
    write_series_csv(src, [0.0, 1.0], np.zeros(2, dtype=complex))
    assert main_series(["--in", str(src), "--cols", "f,finf"]) == 2
    assert "re_f_finf" in capsys.readouterr().err


def test_series_cli_rejects_empty_cols(tmp_path, capsys):
    src = tmp_path / "run.csv"
    write_series_csv(src, [0.0, 1.0], np.zeros(2, dtype=complex))
    assert main_series(["--in", str(src), "--cols", ""]) == 2
