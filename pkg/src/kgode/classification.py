"""Bounded-or-divergent verdicts for at-rest initial conditions.

An initial condition (u0, w0) with zero initial velocities is Divergent when
max(|u|, |w|) reaches the escape radius before the horizon, and Bounded when
it survives the whole horizon below it. The verdict is a finite-time proxy
for true boundedness, run at the protocol horizon T = 1024 by default; it
must not depend on the radius, which the tests check over {5, 10, 100}.
Divergent runs also record the escape time and the sign quadrant of (u, w)
at the first sample past the radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .dynamics import NonFiniteState, Params, _SCHEMES, _n_steps

# sweep cell status codes (match the kernel's integration outcomes)
CELL_BOUNDED = _kernels.COMPLETED
CELL_DIVERGENT = _kernels.ESCAPED
CELL_NONFINITE = _kernels.NONFINITE


class Verdict(Enum):
    BOUNDED = "bounded"
    DIVERGENT = "divergent"


class Quadrant(Enum):
    """Sign pair of (u, w); zero counts as positive."""

    PP = "PP"
    PM = "PM"
    MP = "MP"
    MM = "MM"

    @classmethod
    def of(cls, u: float, w: float) -> "Quadrant":
        return cls(("P" if u >= 0.0 else "M") + ("P" if w >= 0.0 else "M"))

    def exchanged(self) -> "Quadrant":
        return Quadrant(self.value[1] + self.value[0])

    def negated(self) -> "Quadrant":
        flip = {"P": "M", "M": "P"}
        return Quadrant(flip[self.value[0]] + flip[self.value[1]])


@dataclass(frozen=True)
class Classification:
    """Verdict plus escape data; max_amplitude is tracked every step."""

    verdict: Verdict
    max_amplitude: float
    escape_time: float | None = None
    escape_quadrant: Quadrant | None = None


def classify(u0: float, w0: float, params: Params, *,
             scheme: str = "rk4") -> Classification:
    """Classify one at-rest initial condition at the configured horizon."""
    status, step, eu, ew, max_amp = _kernels.classify_core(
        float(u0), float(w0), 0.0, 0.0,
        params.step, _n_steps(params), params.escape_radius, _SCHEMES[scheme],
        params.m1, params.k1, params.kp1, params.m2, params.k2, params.kp2)
    if status == _kernels.NONFINITE:
        raise NonFiniteState(
            f"non-finite state at step {step} from ({u0!r}, {w0!r}); "
            f"reduce step {params.step!r}")
    if status == _kernels.ESCAPED:
        return Classification(
            verdict=Verdict.DIVERGENT,
            max_amplitude=max_amp,
            escape_time=step * params.step,
            escape_quadrant=Quadrant.of(eu, ew),
        )
    return Classification(verdict=Verdict.BOUNDED, max_amplitude=max_amp)


@dataclass(frozen=True)
class SweepResult:
    """Per-cell classification of a rectangular initial-condition lattice.

    status[i, j] corresponds to (u0[i], w0[j]) and holds CELL_BOUNDED,
    CELL_DIVERGENT, or CELL_NONFINITE (a numerical fault is a cell status
    here, never an exception). escape_time and quadrant hold NaN / -1 for
    cells that did not escape.
    """

    params: Params
    u0: np.ndarray
    w0: np.ndarray
    status: np.ndarray
    escape_time: np.ndarray
    escape_quadrant: np.ndarray
    max_amplitude: np.ndarray

    @property
    def n_u(self) -> int:
        return self.u0.size

    @property
    def n_w(self) -> int:
        return self.w0.size

    def quadrant(self, i: int, j: int) -> Quadrant | None:
        code = int(self.escape_quadrant[i, j])
        return None if code < 0 else _QUADRANT_BY_CODE[code]


_QUADRANT_BY_CODE = {0: Quadrant.PP, 1: Quadrant.PM, 2: Quadrant.MP, 3: Quadrant.MM}


def sweep(u0_range: tuple[float, float], w0_range: tuple[float, float],
          n_u: int, n_w: int, params: Params) -> SweepResult:
    """Classify every lattice point of an inclusive rectangular grid.

    Cells run in parallel with pre-assigned output slots, so the result is
    deterministic regardless of the thread schedule.
    """
    if n_u < 1 or n_w < 1:
        raise ValueError(f"lattice must have at least one cell, got {n_u}x{n_w}")
    u0 = np.linspace(u0_range[0], u0_range[1], n_u) if n_u > 1 else np.array([float(u0_range[0])])
    w0 = np.linspace(w0_range[0], w0_range[1], n_w) if n_w > 1 else np.array([float(w0_range[0])])
    uu, ww = np.meshgrid(u0, w0, indexing="ij")

    n_cells = n_u * n_w
    status = np.empty(n_cells, dtype=np.int64)
    esc_step = np.empty(n_cells, dtype=np.int64)
    esc_u = np.empty(n_cells)
    esc_w = np.empty(n_cells)
    max_amp = np.empty(n_cells)
    _kernels.sweep_core(
        np.ascontiguousarray(uu.ravel()), np.ascontiguousarray(ww.ravel()),
        params.step, _n_steps(params), params.escape_radius, _kernels.RK4,
        params.m1, params.k1, params.kp1, params.m2, params.k2, params.kp2,
        status, esc_step, esc_u, esc_w, max_amp)

    escaped = status == CELL_DIVERGENT
    escape_time = np.where(escaped, esc_step * params.step, np.nan)
    quadrant = np.where(
        escaped,
        np.where(esc_u >= 0.0, 0, 2) + np.where(esc_w >= 0.0, 0, 1),
        -1).astype(np.int8)

    arrays = []
    for a in (status.astype(np.int8), escape_time, quadrant, max_amp):
        a = a.reshape(n_u, n_w)
        a.setflags(write=False)
        arrays.append(a)
    for a in (u0, w0):
        a.setflags(write=False)
    return SweepResult(params=params, u0=u0, w0=w0,
                       status=arrays[0], escape_time=arrays[1],
                       escape_quadrant=arrays[2], max_amplitude=arrays[3])
