"""Command-line surface: simulate, stationary, potential-grid, sweep, boundary, classify.

Every command writes its outputs plus a config.json with the fully resolved
settings into the output directory; re-running with ``--config`` on that file
reproduces the data byte for byte. Exit codes: 0 success, 2 configuration
error, 3 numerical fault, 4 bracket or search failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io, plots
from .boundary import BracketInvalid, compare_with_potential, map_boundary
from .classification import classify, sweep
from .dynamics import (DEFAULT_ESCAPE_RADIUS, DEFAULT_HORIZON, DEFAULT_STEP,
                       NonFiniteState, Params, State, integrate)
from .potential import sample_grid
from .stationary import stationary_points

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_SEARCH = 4

_COEFFS = ("m1", "m2", "k1", "k2", "kp1", "kp2")
_CONTROLS = ("step", "horizon", "escape_radius")


class ConfigError(ValueError):
    pass


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE",
                        help="load settings from a previously written config.json")
    parser.add_argument("--params", metavar="FILE|symmetric", default=None,
                        help="coefficient file (flat JSON) or 'symmetric' (default)")
    parser.add_argument("--step", type=float, default=None,
                        help=f"integration step (default {DEFAULT_STEP})")
    parser.add_argument("--horizon", type=float, default=None,
                        help=f"final time (default {DEFAULT_HORIZON})")
    parser.add_argument("--escape-radius", type=float, default=None,
                        help=f"divergence cutoff (default {DEFAULT_ESCAPE_RADIUS})")
    parser.add_argument("--out", metavar="DIR", default="out",
                        help="output directory (default: out)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="tabular output format (default csv)")
    parser.add_argument("--plot", action="store_true",
                        help="also write the optional SVG figure")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgode",
        description="Phase-plane laboratory for the coupled cubic oscillator pair")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate one initial condition")
    _common_flags(p)
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--w0", type=float, required=True)
    p.add_argument("--ut0", type=float, default=0.0)
    p.add_argument("--wt0", type=float, default=0.0)
    p.add_argument("--stride", type=int, default=None,
                   help="store every N-th step (default: about 4096 samples)")
    p.add_argument("--scheme", choices=("rk4", "verlet"), default="rk4")

    p = sub.add_parser("classify", help="bounded/divergent verdict for one point")
    _common_flags(p)
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--w0", type=float, required=True)

    p = sub.add_parser("stationary", help="equilibria and root-locus curves")
    _common_flags(p)
    p.add_argument("--box", type=float, nargs=2, default=[-2.0, 2.0],
                   metavar=("LO", "HI"), help="square search box (default -2 2)")
    p.add_argument("--grid-n", type=int, default=32,
                   help="Newton seed lattice size per axis (default 32)")

    p = sub.add_parser("potential-grid", help="sample the potential on a lattice")
    _common_flags(p)
    p.add_argument("--u-min", type=float, default=-1.5)
    p.add_argument("--u-max", type=float, default=1.5)
    p.add_argument("--w-min", type=float, default=-1.5)
    p.add_argument("--w-max", type=float, default=1.5)
    p.add_argument("--n-u", type=int, default=151)
    p.add_argument("--n-w", type=int, default=151)

    p = sub.add_parser("sweep", help="classify a lattice of initial conditions")
    _common_flags(p)
    p.add_argument("--u0-min", type=float, default=0.0)
    p.add_argument("--u0-max", type=float, default=1.2)
    p.add_argument("--w0-min", type=float, default=0.0)
    p.add_argument("--w0-max", type=float, default=1.2)
    p.add_argument("--n-u", type=int, default=61)
    p.add_argument("--n-w", type=int, default=61)

    p = sub.add_parser("boundary", help="bisect the bounded-band limits")
    _common_flags(p)
    p.add_argument("--w0-min", type=float, default=0.6)
    p.add_argument("--w0-max", type=float, default=1.2)
    p.add_argument("--n-lines", type=int, default=20)
    p.add_argument("--w0-list", default=None,
                   help="comma-separated scan lines (overrides the range)")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--scan-step", type=float, default=0.05)

    return parser


def _load_config(ns: argparse.Namespace, argv: list[str]) -> dict:
    if not ns.config:
        return {}
    try:
        config = io.read_json(ns.config)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {ns.config!r}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError(f"config {ns.config!r} must be a flat JSON object")
    if config.get("command") not in (None, ns.command):
        raise ConfigError(
            f"config is for {config.get('command')!r}, not {ns.command!r}")
    return config


def _resolve_params(ns: argparse.Namespace, config: dict) -> Params:
    fields = {name: 1.0 for name in _COEFFS}
    fields.update(step=DEFAULT_STEP, horizon=DEFAULT_HORIZON,
                  escape_radius=DEFAULT_ESCAPE_RADIUS)
    for name in _COEFFS + _CONTROLS:
        if name in config:
            fields[name] = float(config[name])
    if ns.params not in (None, "symmetric"):
        try:
            loaded = io.read_json(ns.params)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read params {ns.params!r}: {exc}") from exc
        unknown = set(loaded) - set(_COEFFS + _CONTROLS)
        if unknown:
            raise ConfigError(f"unknown params keys {sorted(unknown)}")
        fields.update({k: float(v) for k, v in loaded.items()})
    elif ns.params == "symmetric":
        fields.update({name: 1.0 for name in _COEFFS})
    if ns.step is not None:
        fields["step"] = ns.step
    if ns.horizon is not None:
        fields["horizon"] = ns.horizon
    if ns.escape_radius is not None:
        fields["escape_radius"] = ns.escape_radius
    try:
        return Params(**fields)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _apply_config_defaults(ns: argparse.Namespace, config: dict) -> None:
    # config supplies values only for flags the user left at their defaults
    parser = build_parser()
    defaults = {}
    for action in parser._subparsers._group_actions[0].choices[ns.command]._actions:
        if action.dest != "help":
            defaults[action.dest] = action.default
    for key, value in config.items():
        if key in ("command",) or key in _COEFFS + _CONTROLS:
            continue
        if hasattr(ns, key) and getattr(ns, key) == defaults.get(key):
            setattr(ns, key, value)


def _echo_config(ns: argparse.Namespace, params: Params, out: Path,
                 extra: dict) -> None:
    config = {"command": ns.command, "format": ns.format, "plot": ns.plot}
    config.update(io.params_to_dict(params))
    config.update(extra)
    io.write_json(out / "config.json", config)


def _out_dir(ns: argparse.Namespace) -> Path:
    out = Path(ns.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_simulate(ns: argparse.Namespace, params: Params) -> int:
    out = _out_dir(ns)
    initial = State(0.0, ns.u0, ns.w0, ns.ut0, ns.wt0)
    traj = integrate(initial, params, ns.stride, scheme=ns.scheme)
    sidecar = io.trajectory_sidecar(traj)
    if ns.format == "csv":
        io.write_trajectory_csv(out / "trajectory.csv", traj)
        io.write_json(out / "trajectory.json", sidecar)
    else:
        io.write_trajectory_json(out / "trajectory.json", traj)
    if ns.plot:
        lo = float(min(traj.u.min(), traj.w.min())) - 0.1
        hi = float(max(traj.u.max(), traj.w.max())) + 0.1
        svg = plots.phase_plane_svg(traj, u_range=(lo, hi), w_range=(lo, hi),
                                    title=f"orbit from ({ns.u0:g}, {ns.w0:g})")
        (out / "orbit.svg").write_text(svg)
    _echo_config(ns, params, out, {
        "u0": ns.u0, "w0": ns.w0, "ut0": ns.ut0, "wt0": ns.wt0,
        "stride": ns.stride, "scheme": ns.scheme})
    print(f"simulate: {sidecar['verdict']} "
          f"({sidecar['n_samples']} samples) -> {out}")
    return EXIT_OK


def _cmd_classify(ns: argparse.Namespace, params: Params) -> int:
    out = _out_dir(ns)
    result = io.classification_to_dict(classify(ns.u0, ns.w0, params))
    io.write_json(out / "classification.json", result)
    _echo_config(ns, params, out, {"u0": ns.u0, "w0": ns.w0})
    print(json.dumps(result, sort_keys=True))
    return EXIT_OK


def _cmd_stationary(ns: argparse.Namespace, params: Params) -> int:
    out = _out_dir(ns)
    lo, hi = ns.box
    try:
        equilibria = stationary_points(((lo, hi), (lo, hi)), ns.grid_n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    io.write_json(out / "equilibria.json", {
        "search_box": [[lo, hi], [lo, hi]],
        "grid_n": ns.grid_n,
        "equilibria": io.equilibria_to_dicts(equilibria)})
    svg = plots.stationary_svg(equilibria, window=(lo, hi),
                               title="fixed-point curves and equilibria")
    (out / "stationary.svg").write_text(svg)
    _echo_config(ns, params, out, {"box": [lo, hi], "grid_n": ns.grid_n})
    print(f"stationary: {len(equilibria)} equilibria -> {out}")
    return EXIT_OK


def _cmd_potential_grid(ns: argparse.Namespace, params: Params) -> int:
    out = _out_dir(ns)
    try:
        grid = sample_grid((ns.u_min, ns.u_max), (ns.w_min, ns.w_max),
                           ns.n_u, ns.n_w)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if ns.format == "csv":
        io.write_grid_csv(out / "potential.csv", grid)
    else:
        io.write_json(out / "potential.json", io.grid_to_dict(grid))
    svg = plots.contour_svg(grid, title="potential, 0 < P < 0.1")
    (out / "potential.svg").write_text(svg)
    _echo_config(ns, params, out, {
        "u_min": ns.u_min, "u_max": ns.u_max, "w_min": ns.w_min,
        "w_max": ns.w_max, "n_u": ns.n_u, "n_w": ns.n_w})
    print(f"potential-grid: {ns.n_u}x{ns.n_w} samples -> {out}")
    return EXIT_OK


def _cmd_sweep(ns: argparse.Namespace, params: Params) -> int:
    out = _out_dir(ns)
    try:
        result = sweep((ns.u0_min, ns.u0_max), (ns.w0_min, ns.w0_max),
                       ns.n_u, ns.n_w, params)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if ns.format == "csv":
        io.write_sweep_csv(out / "sweep.csv", result)
    else:
        io.write_json(out / "sweep.json", io.sweep_to_dict(result))
    (out / "sweep.svg").write_text(
        plots.sweep_svg(result, title="bounded (blue) vs divergent"))
    _echo_config(ns, params, out, {
        "u0_min": ns.u0_min, "u0_max": ns.u0_max, "w0_min": ns.w0_min,
        "w0_max": ns.w0_max, "n_u": ns.n_u, "n_w": ns.n_w})
    summary = io.sweep_to_dict(result)
    print(f"sweep: {summary['n_bounded']} bounded, "
          f"{summary['n_divergent']} divergent, "
          f"{summary['n_nonfinite']} non-finite -> {out}")
    return EXIT_OK


def _cmd_boundary(ns: argparse.Namespace, params: Params) -> int:
    out = _out_dir(ns)
    if ns.w0_list:
        try:
            w0_values = [float(v) for v in str(ns.w0_list).split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad --w0-list: {exc}") from exc
    else:
        w0_values = [float(v) for v in np.linspace(ns.w0_min, ns.w0_max, ns.n_lines)]
    if not w0_values:
        raise ConfigError("no scan lines requested")
    scan = map_boundary(w0_values, params, tol=ns.tol, scan_step=ns.scan_step)
    io.write_boundary_csv(out / "boundary.csv", scan.points)
    if ns.format == "json":
        io.write_json(out / "boundary.json", io.boundary_to_dicts(scan.points))
    if scan.points:
        report = compare_with_potential(scan.points)
        io.write_json(out / "comparison.json", report.as_dict())
    if scan.unbracketed:
        io.write_json(out / "unbracketed.json",
                      [{"w0": w0, "reason": reason} for w0, reason in scan.unbracketed])
    grid = sample_grid((0.0, 1.3), (0.0, 1.3), 131, 131)
    (out / "boundary.svg").write_text(plots.boundary_overlay_svg(
        grid, scan.points, title="bounded-band limits over 0 < P < 0.1"))
    _echo_config(ns, params, out, {
        "w0_min": ns.w0_min, "w0_max": ns.w0_max, "n_lines": ns.n_lines,
        "w0_list": ns.w0_list, "tol": ns.tol, "scan_step": ns.scan_step})
    print(f"boundary: {len(scan.points)} points, "
          f"{len(scan.unbracketed)} lines without a bracket -> {out}")
    if not scan.points:
        print("boundary: no verdict change found on any scan line", file=sys.stderr)
        return EXIT_SEARCH
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "classify": _cmd_classify,
    "stationary": _cmd_stationary,
    "potential-grid": _cmd_potential_grid,
    "sweep": _cmd_sweep,
    "boundary": _cmd_boundary,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _load_config(ns, argv)
        if config:
            _apply_config_defaults(ns, config)
        params = _resolve_params(ns, config)
        return _COMMANDS[ns.command](ns, params)
    except ConfigError as exc:
        print(f"kgode: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonFiniteState as exc:
        print(f"kgode: numerical fault: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BracketInvalid as exc:
        print(f"kgode: bracket failure: {exc}", file=sys.stderr)
        return EXIT_SEARCH


if __name__ == "__main__":
    sys.exit(main())
