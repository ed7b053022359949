"""Error surfaces over the drive-strength / transition-frequency plane.

The sweep engine runs the exact solver and the approximation ladder on a
grid of (omega0/omega, omega_c/omega) ratios and scores each method with
a relative L2 error on f.  Cells are independent pure tasks, so the
engine can fan them out over processes; results are assembled at fixed
cell indices so the surface is identical at any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import FewcycleError, GridMismatchError, ZeroNormError
from .numerics import trapezoid_weights
from .pulse import PulseParams
from .solver import SolverSettings, solve_exact, solve_f1_exact
from .theta import ComplexTrajectory
from . import approx

SWEEP_METHODS = ("f0", "f1closed", "f1exact", "finf")
MASK_FLAG_FRACTION = 0.05


def relative_l2_error(approx_traj: ComplexTrajectory, exact: ComplexTrajectory) -> float:
    """Trapezoid-weighted ||approx - exact|| / ||exact|| on the shared grid.

    Samples masked in either trajectory are excluded pairwise from both
    norms.  Raises GridMismatchError on different grids and ZeroNormError
    when the reference vanishes on the kept samples.
    """
    approx_traj.require_same_grid(exact)
    w = trapezoid_weights(approx_traj.K + 1, approx_traj.h)
    keep = np.ones(approx_traj.K + 1, dtype=bool)
    for traj in (approx_traj, exact):
        if traj.mask is not None:
            keep &= ~traj.mask
    if not np.any(keep):
        raise ZeroNormError("all samples masked")
    diff = approx_traj.samples[keep] - exact.samples[keep]
    ref = exact.samples[keep]
    wk = w[keep]
    den = float(np.sqrt(np.sum(wk * np.abs(ref) ** 2)))
    if den == 0.0:
        raise ZeroNormError("reference trajectory has zero norm")
    num = float(np.sqrt(np.sum(wk * np.abs(diff) ** 2)))
    return num / den


def applicability(p: PulseParams, two_sided: bool = False) -> float:
    """Far-off-resonance score; the approximations are trusted when small.

    One-sided: (omega/omega_c)^2 + (omega0/omega)^2, for the low-frequency
    side only.  Two-sided additionally credits the opposite wings:
    min((omega_c/omega)^2, (omega/omega_c)^2) + min((omega0/omega)^2,
    (omega/omega0)^2); it requires omega0 > 0.
    """
    wc = p.omega_c / p.omega
    w0 = p.omega0 / p.omega
    if not two_sided:
        return (1.0 / wc) ** 2 + w0**2
    if p.omega0 <= 0.0:
        raise ValueError("two-sided score needs omega0 > 0")
    return min(wc**2, 1.0 / wc**2) + min(w0**2, 1.0 / w0**2)


@dataclass(frozen=True)
class ErrorSurface:
    """Per-cell method errors on a ratio grid, row-major (y outer, x inner)."""

    x_axis: np.ndarray  # omega0 / omega
    y_axis: np.ndarray  # omega_c / omega
    err: dict  # method name -> (ny, nx) float array, NaN where flagged
    lambda_values: np.ndarray  # (ny, nx) complex
    lambda_converged: np.ndarray  # (ny, nx) bool
    flags: list  # flags[iy][ix] -> tuple of flag strings
    meta: dict

    def cell_flags(self, iy: int, ix: int) -> tuple:
        return self.flags[iy][ix]


def _sweep_cell(args) -> tuple:
    """Score one grid cell; standalone so process pools can pickle it."""
    template, x, y, methods, settings = args
    p = replace(template, omega0=x * template.omega, omega_c=y * template.omega)
    K = settings.K_out
    flags = []
    errs = {m: float("nan") for m in SWEEP_METHODS}
    lam = complex(float("nan"), float("nan"))
    lam_ok = False
    try:
        _, _, f_exact = solve_exact(p, settings)
    except FewcycleError as exc:
        flags.append(f"exact:{type(exc).__name__}")
        return errs, lam, lam_ok, tuple(flags)
    if f_exact.mask is not None:
        frac = float(np.mean(f_exact.mask))
        if frac > MASK_FLAG_FRACTION:
            flags.append("masked_gt_5pct")

    def score(name, build):
        if name not in methods:
            return
        try:
            errs[name] = relative_l2_error(build(), f_exact)
        except FewcycleError as exc:
            flags.append(f"{name}:{type(exc).__name__}")

    score("f0", lambda: approx.f0(p, K))
    score("f1closed", lambda: approx.f1_closed(p, K))
    score("f1exact", lambda: solve_f1_exact(p, K))
    if "finf" in methods:
        try:
            lr = approx.solve_lambda(p, K)
            lam = lr.value
            lam_ok = lr.converged
            if lr.converged:
                errs["finf"] = relative_l2_error(
                    approx.finfinity(p, K, lambda_result=lr), f_exact
                )
            else:
                flags.append("lambda_not_converged")
        except FewcycleError as exc:
            flags.append(f"finf:{type(exc).__name__}")
    return errs, lam, lam_ok, tuple(flags)


def sweep(
    template: PulseParams,
    x_grid: np.ndarray,
    y_grid: np.ndarray,
    methods=SWEEP_METHODS,
    settings: SolverSettings = SolverSettings(),
    workers: int = 1,
) -> ErrorSurface:
    """Run the method ladder over a ratio grid and collect an ErrorSurface.

    workers > 1 distributes cells over a process pool; the result is
    byte-identical to the serial run because each cell is pure and lands
    at its own index.
    """
    x_axis = np.asarray(x_grid, dtype=np.float64)
    y_axis = np.asarray(y_grid, dtype=np.float64)
    if x_axis.ndim != 1 or y_axis.ndim != 1 or x_axis.size == 0 or y_axis.size == 0:
        raise ValueError("grids must be non-empty 1-D arrays")
    methods = tuple(m for m in SWEEP_METHODS if m in set(methods))
    nx, ny = x_axis.size, y_axis.size
    tasks = [
        (template, float(x_axis[ix]), float(y_axis[iy]), methods, settings)
        for iy in range(ny)
        for ix in range(nx)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_cell, tasks, chunksize=8))
    else:
        results = [_sweep_cell(t) for t in tasks]
    err = {m: np.full((ny, nx), np.nan) for m in SWEEP_METHODS}
    lam_vals = np.full(
        (ny, nx), complex(float("nan"), float("nan")), dtype=np.complex128
    )
    lam_ok = np.zeros((ny, nx), dtype=bool)
    flags = [[() for _ in range(nx)] for _ in range(ny)]
    for idx, (errs, lam, ok, cell_flags) in enumerate(results):
        iy, ix = divmod(idx, nx)
        for m in SWEEP_METHODS:
            err[m][iy, ix] = errs[m]
        lam_vals[iy, ix] = lam
        lam_ok[iy, ix] = ok
        flags[iy][ix] = cell_flags
    meta = {
        "template": template,
        "K": settings.K_out,
        "rtol": settings.rtol,
        "atol": settings.atol,
        "methods": methods,
    }
    return ErrorSurface(
        x_axis=x_axis,
        y_axis=y_axis,
        err=err,
        lambda_values=lam_vals,
        lambda_converged=lam_ok,
        flags=flags,
        meta=meta,
    )


def _edge_point(kind, iy, ix, x, y, vals, level, cache):
    """Crossing coordinates on one grid edge, computed once and reused."""
    key = (kind, iy, ix)
    if key in cache:
        return cache[key]
    if kind == "h":
        v0, v1 = vals[iy, ix], vals[iy, ix + 1]
        s = (level - v0) / (v1 - v0)
        pt = (float(x[ix] + s * (x[ix + 1] - x[ix])), float(y[iy]))
    else:
        v0, v1 = vals[iy, ix], vals[iy + 1, ix]
        s = (level - v0) / (v1 - v0)
        pt = (float(x[ix]), float(y[iy] + s * (y[iy + 1] - y[iy])))
    cache[key] = pt
    return pt


# marching-squares segment table: case index -> list of edge pairs,
# edges named bottom/right/top/left; cases 5 and 10 resolved by the
# cell-center average at lookup time
_MS_TABLE = {
    0: [],
    1: [("left", "bottom")],
    2: [("bottom", "right")],
    3: [("left", "right")],
    4: [("right", "top")],
    6: [("bottom", "top")],
    7: [("left", "top")],
    8: [("top", "left")],
    9: [("bottom", "top")],
    11: [("right", "top")],
    12: [("left", "right")],
    13: [("bottom", "right")],
    14: [("left", "bottom")],
    15: [],
}


def extract_contour(surface: ErrorSurface, method: str, level: float) -> list:
    """Level-set polylines of one error field, via marching squares.

    Returns a list of polylines, each a list of (x, y) points in grid
    coordinates; open chains end on the grid boundary, loops repeat
    their first point last.  Cells touching a NaN sample are skipped.
    """
    if method not in surface.err:
        raise KeyError(f"unknown method {method!r}")
    vals = surface.err[method]
    x, y = surface.x_axis, surface.y_axis
    ny, nx = vals.shape
    cache = {}
    segments = []  # (key_a, key_b) edge keys
    for iy in range(ny - 1):
        for ix in range(nx - 1):
            corners = vals[iy : iy + 2, ix : ix + 2]
            if np.any(np.isnan(corners)):
                continue
            b0 = vals[iy, ix] > level
            b1 = vals[iy, ix + 1] > level
            b2 = vals[iy + 1, ix + 1] > level
            b3 = vals[iy + 1, ix] > level
            case = int(b0) + 2 * int(b1) + 4 * int(b2) + 8 * int(b3)
            if case in (5, 10):
                center = float(np.mean(corners)) > level
                if case == 5:
                    pairs = (
                        [("bottom", "right"), ("top", "left")]
                        if center
                        else [("left", "bottom"), ("right", "top")]
                    )
                else:
                    pairs = (
                        [("left", "bottom"), ("right", "top")]
                        if center
                        else [("bottom", "right"), ("top", "left")]
                    )
            else:
                pairs = _MS_TABLE[case]
            edge_keys = {
                "bottom": ("h", iy, ix),
                "top": ("h", iy + 1, ix),
                "left": ("v", iy, ix),
                "right": ("v", iy, ix + 1),
            }
            for a, b in pairs:
                segments.append((edge_keys[a], edge_keys[b]))
    # stitch segments into chains on exact edge-key identity
    adjacency = {}
    for si, (a, b) in enumerate(segments):
        adjacency.setdefault(a, []).append((si, b))
        adjacency.setdefault(b, []).append((si, a))
    used = [False] * len(segments)

    def walk(start_key):
        chain = [start_key]
        node = start_key
        while True:
            nxt = None
            for si, other in adjacency[node]:
                if not used[si]:
                    used[si] = True
                    nxt = other
                    break
            if nxt is None:
                return chain
            chain.append(nxt)
            node = nxt

    chains = []
    open_ends = sorted(k for k, links in adjacency.items() if len(links) % 2 == 1)
    for key in open_ends:
        if any(not used[si] for si, _ in adjacency[key]):
            chains.append(walk(key))
    for key in sorted(adjacency):
        if any(not used[si] for si, _ in adjacency[key]):
            chains.append(walk(key))
    polylines = []
    for chain in chains:
        pts = [_edge_point(k[0], k[1], k[2], x, y, vals, level, cache) for k in chain]
        polylines.append(pts)
    return polylines
