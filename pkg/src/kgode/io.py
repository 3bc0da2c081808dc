"""CSV/JSON serialization for trajectories, grids, sweeps and boundary tables.

Floats are written with repr, Python's shortest round-trip representation, so
parsing an emitted file reproduces the stored values bit for bit. Matrix
files carry their lattice ranges in '#' metadata lines; all JSON is emitted
with sorted keys so identical data gives identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .boundary import BoundaryPoint, Side
from .classification import (CELL_BOUNDED, CELL_DIVERGENT, CELL_NONFINITE,
                             Classification, SweepResult)
from .dynamics import Params, State, Trajectory
from .potential import PotentialGrid

TRAJECTORY_HEADER = "t,u,w,ut,wt"
BOUNDARY_HEADER = "w0,u0,side,P_value,bracket_width"

_SWEEP_CHAR = {CELL_BOUNDED: "B", CELL_DIVERGENT: "D", CELL_NONFINITE: "X"}
_SWEEP_CODE = {c: s for s, c in _SWEEP_CHAR.items()}


def fmt(x: float) -> str:
    """Shortest decimal that parses back to exactly the same float."""
    return repr(float(x))


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_json(path: str | Path):
    return json.loads(Path(path).read_text())


def params_to_dict(params: Params) -> dict:
    return asdict(params)


def params_from_dict(d: dict) -> Params:
    return Params(**d)


# -- trajectories -----------------------------------------------------------

def trajectory_rows(traj: Trajectory):
    for i in range(len(traj)):
        yield (traj.t[i], traj.u[i], traj.w[i], traj.ut[i], traj.wt[i])


def write_trajectory_csv(path: str | Path, traj: Trajectory) -> None:
    lines = [TRAJECTORY_HEADER]
    lines.extend(",".join(fmt(v) for v in row) for row in trajectory_rows(traj))
    Path(path).write_text("\n".join(lines) + "\n")


def read_trajectory_csv(path: str | Path) -> dict[str, np.ndarray]:
    text = Path(path).read_text().strip().splitlines()
    if text[0] != TRAJECTORY_HEADER:
        raise ValueError(f"unexpected trajectory header {text[0]!r}")
    columns = TRAJECTORY_HEADER.split(",")
    data = [[] for _ in columns]
    for line in text[1:]:
        for slot, cell in zip(data, line.split(",")):
            slot.append(float(cell))
    return {name: np.asarray(col) for name, col in zip(columns, data)}


def trajectory_sidecar(traj: Trajectory,
                       classification: Classification | None = None) -> dict:
    """Metadata block written next to (or around) the sample table."""
    side = {
        "params": params_to_dict(traj.params),
        "scheme": traj.scheme,
        "output_stride": traj.output_stride,
        "initial": asdict(traj.initial),
        "n_samples": len(traj),
        "terminated_early": traj.terminated_early,
        "verdict": "divergent" if traj.terminated_early else "bounded",
        "escape_time": traj.escape_time,
        "max_amplitude": float(np.maximum(np.abs(traj.u), np.abs(traj.w)).max()),
        "escape_quadrant": None,
    }
    if classification is not None:
        side["verdict"] = classification.verdict.value
        side["escape_time"] = classification.escape_time
        side["max_amplitude"] = classification.max_amplitude
        if classification.escape_quadrant is not None:
            side["escape_quadrant"] = classification.escape_quadrant.value
    elif traj.terminated_early:
        u_end, w_end = float(traj.u[-1]), float(traj.w[-1])
        side["escape_quadrant"] = (("P" if u_end >= 0.0 else "M")
                                   + ("P" if w_end >= 0.0 else "M"))
    return side


def write_trajectory_json(path: str | Path, traj: Trajectory,
                          classification: Classification | None = None) -> None:
    payload = trajectory_sidecar(traj, classification)
    payload["samples"] = {
        "t": [float(v) for v in traj.t],
        "u": [float(v) for v in traj.u],
        "w": [float(v) for v in traj.w],
        "ut": [float(v) for v in traj.ut],
        "wt": [float(v) for v in traj.wt],
    }
    write_json(path, payload)


# -- matrices ---------------------------------------------------------------

def _matrix_header(kind: str, axis_u: str, axis_w: str,
                   u: np.ndarray, w: np.ndarray) -> list[str]:
    return [
        f"# kgode {kind}",
        f"# {axis_u}_min={fmt(u[0])} {axis_u}_max={fmt(u[-1])} n_u={u.size}",
        f"# {axis_w}_min={fmt(w[0])} {axis_w}_max={fmt(w[-1])} n_w={w.size}",
        f"# rows: {axis_u} index, columns: {axis_w} index",
    ]


def _parse_matrix_meta(lines: list[str]) -> tuple[dict, list[str]]:
    meta: dict[str, float] = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    key, value = token.split("=", 1)
                    meta[key] = float(value)
        elif line.strip():
            body.append(line.strip())
    return meta, body


def write_grid_csv(path: str | Path, grid: PotentialGrid) -> None:
    lines = _matrix_header("potential grid", "u", "w", grid.u, grid.w)
    for i in range(grid.n_u):
        lines.append(",".join(fmt(v) for v in grid.values[i]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_grid_csv(path: str | Path) -> PotentialGrid:
    meta, body = _parse_matrix_meta(Path(path).read_text().splitlines())
    n_u, n_w = int(meta["n_u"]), int(meta["n_w"])
    values = np.array([[float(c) for c in line.split(",")] for line in body])
    if values.shape != (n_u, n_w):
        raise ValueError(f"matrix shape {values.shape} does not match header")
    u = np.linspace(meta["u_min"], meta["u_max"], n_u)
    w = np.linspace(meta["w_min"], meta["w_max"], n_w)
    for a in (u, w, values):
        a.setflags(write=False)
    return PotentialGrid((meta["u_min"], meta["u_max"]),
                         (meta["w_min"], meta["w_max"]), n_u, n_w, u, w, values)


def grid_to_dict(grid: PotentialGrid) -> dict:
    return {
        "u_min": grid.u_range[0], "u_max": grid.u_range[1], "n_u": grid.n_u,
        "w_min": grid.w_range[0], "w_max": grid.w_range[1], "n_w": grid.n_w,
        "values": [[float(v) for v in row] for row in grid.values],
    }


def write_sweep_csv(path: str | Path, result: SweepResult) -> None:
    lines = _matrix_header("sweep map", "u0", "w0", result.u0, result.w0)
    lines[-1] += "; B=bounded D=divergent X=non-finite"
    for i in range(result.n_u):
        lines.append(",".join(_SWEEP_CHAR[int(s)] for s in result.status[i]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_sweep_csv(path: str | Path) -> dict:
    meta, body = _parse_matrix_meta(Path(path).read_text().splitlines())
    status = np.array([[_SWEEP_CODE[c] for c in line.split(",")] for line in body],
                      dtype=np.int8)
    return {"meta": meta, "status": status}


def sweep_to_dict(result: SweepResult) -> dict:
    return {
        "u0_min": float(result.u0[0]), "u0_max": float(result.u0[-1]),
        "w0_min": float(result.w0[0]), "w0_max": float(result.w0[-1]),
        "n_u": result.n_u, "n_w": result.n_w,
        "status": ["".join(_SWEEP_CHAR[int(s)] for s in row)
                   for row in result.status],
        "n_bounded": int((result.status == CELL_BOUNDED).sum()),
        "n_divergent": int((result.status == CELL_DIVERGENT).sum()),
        "n_nonfinite": int((result.status == CELL_NONFINITE).sum()),
    }


# -- boundary tables --------------------------------------------------------

def write_boundary_csv(path: str | Path, points: list[BoundaryPoint]) -> None:
    lines = [BOUNDARY_HEADER]
    for p in points:
        lines.append(",".join((fmt(p.w0), fmt(p.u0), p.side.value,
                               fmt(p.potential), fmt(p.bracket_width))))
    Path(path).write_text("\n".join(lines) + "\n")


def read_boundary_csv(path: str | Path) -> list[BoundaryPoint]:
    text = Path(path).read_text().strip().splitlines()
    if text[0] != BOUNDARY_HEADER:
        raise ValueError(f"unexpected boundary header {text[0]!r}")
    points = []
    for line in text[1:]:
        w0, u0, side, p_value, width = line.split(",")
        points.append(BoundaryPoint(
            w0=float(w0), u0=float(u0), side=Side(side),
            potential=float(p_value), bracket_width=float(width),
            bracket=(float(u0) - 0.5 * float(width), float(u0) + 0.5 * float(width))))
    return points


def boundary_to_dicts(points: list[BoundaryPoint]) -> list[dict]:
    return [
        {"w0": p.w0, "u0": p.u0, "side": p.side.value,
         "P_value": p.potential, "bracket_width": p.bracket_width}
        for p in points
    ]


# -- equilibria and classifications ----------------------------------------

def equilibria_to_dicts(equilibria) -> list[dict]:
    return [{"u": e.u, "w": e.w, "kind": e.kind.value} for e in equilibria]


def classification_to_dict(c: Classification) -> dict:
    return {
        "verdict": c.verdict.value,
        "max_amplitude": c.max_amplitude,
        "escape_time": c.escape_time,
        "escape_quadrant": None if c.escape_quadrant is None else c.escape_quadrant.value,
    }


def state_to_dict(s: State) -> dict:
    return asdict(s)
