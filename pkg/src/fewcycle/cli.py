"""Command-line front end: simulate, sweep, lambda, contour.

Configuration is a flat text file of `key = value` lines (`#` starts a
comment) plus `--key value` overrides on the command line; overrides
win.  Every CSV written embeds the fully resolved configuration on a
`# config:` comment line, sorted by key, so any output can be re-run
from its own header.  Floats are printed as the shortest decimal string
that round-trips binary64, which makes repeated runs byte-identical.

Exit codes: 0 success, 2 configuration or usage error, 3 numerical
failure.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import approx
from .analysis import SWEEP_METHODS, ErrorSurface, extract_contour, sweep
from .errors import FewcycleError
from .pulse import Gaussian, Lorentzian, PulseParams, Sech, Square
from .solver import SolverSettings, solve_exact, solve_f1_exact, solve_rwa

SIMULATE_METHODS = ("f0", "f1closed", "f1exact", "finf", "rwa", "zseries")

_ENVELOPES = {
    "square": lambda w: Square(),
    "gaussian": lambda w: Gaussian(sigma_factor=w),
    "sech": lambda w: Sech(width_factor=w),
    "lorentzian": lambda w: Lorentzian(width_factor=w),
}

_ERR_COLUMNS = {
    "f0": "err_f0",
    "f1closed": "err_f1_closed",
    "f1exact": "err_f1_exact",
    "finf": "err_finf",
}


class ConfigError(Exception):
    """Bad key, value, or file; reported on stderr with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters; field names double as config keys."""

    omega: float = 1.0
    omega0_ratio: float = 0.1
    omegac_ratio: float = 0.2
    phi: float = 0.0
    cycles: float = 3.0
    envelope: str = "gaussian"
    envelope_width: float = 0.125
    K: int = 800
    rtol: float = 1e-10
    atol: float = 1e-12
    methods: str = "f0,f1closed,f1exact,finf"
    zseries_order: int = 2
    threads: str = "1"
    x_min: float = 0.02
    x_max: float = 1.0
    x_count: int = 40
    y_min: float = 0.02
    y_max: float = 5.0
    y_count: int = 40
    method: str = "finf"
    level: float = 0.1
    in_csv: str = ""
    out: str = ""

    def pulse(self) -> PulseParams:
        if self.envelope not in _ENVELOPES:
            raise ConfigError(f"unknown envelope {self.envelope!r}")
        try:
            env = _ENVELOPES[self.envelope](self.envelope_width)
            return PulseParams(
                omega=self.omega,
                omega_c=self.omegac_ratio * self.omega,
                omega0=self.omega0_ratio * self.omega,
                phi=self.phi,
                cycles=self.cycles,
                envelope=env,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def settings(self) -> SolverSettings:
        return SolverSettings(rtol=self.rtol, atol=self.atol, K_out=self.K)

    def method_list(self) -> list:
        if not self.methods:
            return []
        out = []
        for m in self.methods.split(","):
            m = m.strip()
            if m not in SIMULATE_METHODS:
                raise ConfigError(f"unknown method {m!r}")
            if m not in out:
                out.append(m)
        return out

    def workers(self) -> int:
        if self.threads == "auto":
            return os.cpu_count() or 1
        try:
            n = int(self.threads)
        except ValueError:
            raise ConfigError(f"threads must be an integer or 'auto', got {self.threads!r}") from None
        if n < 1:
            raise ConfigError("threads must be >= 1")
        return n

    def canonical(self) -> str:
        # out and threads never touch numerical output, so they are left
        # off the embedded config line; identical physics means identical
        # bytes regardless of destination path or worker count
        parts = []
        for f in sorted(fields(self), key=lambda f: f.name):
            if f.name in ("out", "threads"):
                continue
            v = getattr(self, f.name)
            parts.append(f"{f.name}={_format_value(v)}")
        return " ".join(parts)


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _coerce(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(RunConfig)}
    if name not in kinds:
        raise ConfigError(f"unknown config key {name!r}")
    kind = kinds[name]
    raw = raw.strip()
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
    except ValueError:
        raise ConfigError(f"bad value for {name!r}: {raw!r}") from None
    return raw


def load_config(path: str | None, overrides: dict) -> RunConfig:
    """Defaults, then file entries, then command-line overrides."""
    values = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        for lineno, line in enumerate(lines, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, raw = line.partition("=")
            key = key.strip()
            values[key] = _coerce(key, raw)
    for key, raw in overrides.items():
        values[key] = _coerce(key, raw)
    cfg = RunConfig(**values)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.omega <= 0 or cfg.omegac_ratio <= 0 or cfg.cycles <= 0:
        raise ConfigError("omega, omegac_ratio, and cycles must be positive")
    if cfg.omega0_ratio < 0:
        raise ConfigError("omega0_ratio must be >= 0")
    if cfg.K < 16:
        raise ConfigError("K must be >= 16")
    if not 0 < cfg.rtol < 1 or not 0 < cfg.atol < 1:
        raise ConfigError("tolerances must be in (0, 1)")
    if cfg.x_count < 1 or cfg.y_count < 1:
        raise ConfigError("grid counts must be >= 1")
    if cfg.x_min > cfg.x_max or cfg.y_min > cfg.y_max:
        raise ConfigError("grid ranges must have min <= max")
    if not 0 < cfg.level < 1:
        raise ConfigError("level must be in (0, 1)")
    if not 0 <= cfg.zseries_order <= 6:
        raise ConfigError("zseries_order must be in [0, 6]")
    if cfg.envelope not in _ENVELOPES:
        raise ConfigError(f"unknown envelope {cfg.envelope!r}")
    cfg.method_list()
    cfg.workers()


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _fmt(x: float) -> str:
    return repr(float(x))


def _grid(lo: float, hi: float, n: int) -> np.ndarray:
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def cmd_simulate(cfg: RunConfig) -> int:
    p = cfg.pulse()
    s = cfg.settings()
    methods = cfg.method_list()
    C, D, f = solve_exact(p, s)
    t = f.t
    extras = {}
    for m in methods:
        if m == "f0":
            extras[m] = approx.f0(p, cfg.K).samples
        elif m == "f1closed":
            extras[m] = approx.f1_closed(p, cfg.K).samples
        elif m == "f1exact":
            extras[m] = solve_f1_exact(p, cfg.K).samples
        elif m == "finf":
            extras[m] = approx.finfinity(p, cfg.K).samples
        elif m == "rwa":
            extras[m] = solve_rwa(p, cfg.K)[2].samples
        elif m == "zseries":
            extras[m] = approx.z_series(p, cfg.K, cfg.zseries_order)[1].samples
    mask = f.mask if f.mask is not None else np.zeros(t.size, dtype=bool)
    header = "t,re_C,im_C,re_D,im_D,re_f,im_f,pop_c,masked"
    for m in methods:
        header += f",re_f_{m},im_f_{m}"
    lines = [f"# config: {cfg.canonical()}", header]
    for i in range(t.size):
        fv = complex(float("nan"), float("nan")) if mask[i] else complex(f.samples[i])
        row = [
            _fmt(t[i]),
            _fmt(C.samples[i].real),
            _fmt(C.samples[i].imag),
            _fmt(D.samples[i].real),
            _fmt(D.samples[i].imag),
            _fmt(fv.real),
            _fmt(fv.imag),
            _fmt(abs(C.samples[i]) ** 2),
            "1" if mask[i] else "0",
        ]
        for m in methods:
            row.append(_fmt(extras[m][i].real))
            row.append(_fmt(extras[m][i].imag))
        lines.append(",".join(row))
    _atomic_write(cfg.out or "simulate.csv", "\n".join(lines) + "\n")
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    template = replace(cfg.pulse(), omega0=0.0, omega_c=cfg.omega)
    x = _grid(cfg.x_min, cfg.x_max, cfg.x_count)
    y = _grid(cfg.y_min, cfg.y_max, cfg.y_count)
    methods = [m for m in cfg.method_list() if m in SWEEP_METHODS]
    surface = sweep(
        template,
        x,
        y,
        methods=methods,
        settings=cfg.settings(),
        workers=cfg.workers(),
    )
    lines = [
        f"# config: {cfg.canonical()}",
        "omega0_ratio,omegac_ratio,err_f0,err_f1_closed,err_f1_exact,"
        "err_finf,err_finf_pct,lambda_re,lambda_im,lambda_converged,flags",
    ]
    for iy in range(y.size):
        for ix in range(x.size):
            e = {m: surface.err[m][iy, ix] for m in SWEEP_METHODS}
            lam = surface.lambda_values[iy, ix]
            row = [
                _fmt(x[ix]),
                _fmt(y[iy]),
                _fmt(e["f0"]),
                _fmt(e["f1closed"]),
                _fmt(e["f1exact"]),
                _fmt(e["finf"]),
                _fmt(100.0 * e["finf"]),
                _fmt(lam.real),
                _fmt(lam.imag),
                "1" if surface.lambda_converged[iy, ix] else "0",
                ";".join(surface.flags[iy][ix]),
            ]
            lines.append(",".join(row))
    _atomic_write(cfg.out or "surface.csv", "\n".join(lines) + "\n")
    return 0


def cmd_lambda(cfg: RunConfig) -> int:
    p = cfg.pulse()
    lr = approx.solve_lambda(p, cfg.K)
    a0 = approx.alpha0(p, cfg.K).value
    print(
        f"lambda_re={_fmt(lr.value.real)} lambda_im={_fmt(lr.value.imag)} "
        f"residual={_fmt(lr.residual)} iterations={lr.iterations} "
        f"converged={1 if lr.converged else 0} "
        f"alpha0_re={_fmt(a0.real)} alpha0_im={_fmt(a0.imag)}"
    )
    return 0 if lr.converged else 3


def _read_surface_csv(path: str, method: str) -> ErrorSurface:
    col = _ERR_COLUMNS.get(method)
    if col is None:
        raise ConfigError(f"unknown method {method!r}")
    try:
        with open(path, encoding="utf-8") as fh:
            rows = [ln.rstrip("\n") for ln in fh if not ln.startswith("#")]
    except OSError as exc:
        raise ConfigError(f"cannot read surface CSV: {exc}") from None
    if not rows:
        raise ConfigError("surface CSV is empty")
    names = rows[0].split(",")
    for needed in ("omega0_ratio", "omegac_ratio", col):
        if needed not in names:
            raise ConfigError(f"surface CSV lacks column {needed!r}")
    ie, ix_col, iy_col = names.index(col), names.index("omega0_ratio"), names.index("omegac_ratio")
    xs, ys, es = [], [], []
    for ln in rows[1:]:
        parts = ln.split(",")
        if len(parts) != len(names):
            raise ConfigError("surface CSV has a ragged row")
        try:
            xs.append(float(parts[ix_col]))
            ys.append(float(parts[iy_col]))
            es.append(float(parts[ie]))
        except ValueError:
            raise ConfigError("surface CSV has a non-numeric cell") from None
    if not xs:
        raise ConfigError("surface CSV has no data rows")
    x_axis = []
    for v in xs:
        if v in x_axis:
            break
        x_axis.append(v)
    nx = len(x_axis)
    if len(xs) % nx != 0:
        raise ConfigError("surface CSV rows do not form a full grid")
    ny = len(xs) // nx
    y_axis = [ys[iy * nx] for iy in range(ny)]
    for i, (xv, yv) in enumerate(zip(xs, ys)):
        if xv != x_axis[i % nx] or yv != y_axis[i // nx]:
            raise ConfigError("surface CSV is not row-major over the grid")
    err = np.array(es, dtype=np.float64).reshape(ny, nx)
    return ErrorSurface(
        x_axis=np.array(x_axis),
        y_axis=np.array(y_axis),
        err={method: err},
        lambda_values=np.zeros((ny, nx), dtype=np.complex128),
        lambda_converged=np.zeros((ny, nx), dtype=bool),
        flags=[[() for _ in range(nx)] for _ in range(ny)],
        meta={},
    )


def cmd_contour(cfg: RunConfig) -> int:
    if not cfg.in_csv:
        raise ConfigError("contour requires in_csv (or --in)")
    surface = _read_surface_csv(cfg.in_csv, cfg.method)
    polylines = extract_contour(surface, cfg.method, cfg.level)
    lines = [f"# config: {cfg.canonical()}", "polyline_id,omega0_ratio,omegac_ratio"]
    for pid, poly in enumerate(polylines):
        for xv, yv in poly:
            lines.append(f"{pid},{_fmt(xv)},{_fmt(yv)}")
    _atomic_write(cfg.out or "contour.csv", "\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "lambda": cmd_lambda,
    "contour": cmd_contour,
}

_FLAG_KEYS = {"--config": None, "--out": "out", "--methods": "methods", "--threads": "threads", "--in": "in_csv", "--method": "method", "--level": "level"}


def _parse_argv(argv: list) -> tuple:
    if not argv or argv[0] in ("-h", "--help"):
        raise ConfigError(
            "usage: fewcycle {simulate|sweep|lambda|contour} [--config FILE] [--key value ...]"
        )
    command = argv[0]
    if command not in _COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    config_path = None
    overrides = {}
    i = 1
    while i < len(argv):
        tok = argv[i]
        if not tok.startswith("--"):
            raise ConfigError(f"expected --key, got {tok!r}")
        if i + 1 >= len(argv):
            raise ConfigError(f"missing value for {tok}")
        val = argv[i + 1]
        if tok == "--config":
            config_path = val
        elif tok in _FLAG_KEYS:
            overrides[_FLAG_KEYS[tok]] = val
        else:
            overrides[tok[2:]] = val
        i += 2
    return command, config_path, overrides


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        command, config_path, overrides = _parse_argv(argv)
        cfg = load_config(config_path, overrides)
        return _COMMANDS[command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FewcycleError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
