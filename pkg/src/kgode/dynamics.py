"""Vector field and fixed-step integration for the coupled cubic oscillator pair.

The system couples two anharmonic oscillators through cubic cross terms:

    u'' = m1*u - k1*u**3 - kp1*u**2*w
    w'' = m2*w - k2*w**3 - kp2*u*w**2

With symmetric coefficients (all equal to one) the flow is invariant under
exchanging u and w and under negating both, and it preserves four lines of
the (u, w) plane -- the two axes, the diagonal u = w and the antidiagonal
u = -w -- each of which carries a one-dimensional reduction with a conserved
energy. Those reductions double as independent checks on the integrator.

Integration is deterministic fixed-step Runge-Kutta of order 4 (default) or
velocity Verlet for cross-checks, with early termination once max(|u|, |w|)
reaches the escape radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels

DEFAULT_STEP = 2.0 ** -8
DEFAULT_HORIZON = 1024.0
DEFAULT_ESCAPE_RADIUS = 10.0

# target sample count per stored trajectory when no stride is given
_TARGET_SAMPLES = 4096

_SCHEMES = {"rk4": _kernels.RK4, "verlet": _kernels.VERLET}


class NonFiniteState(ArithmeticError):
    """An integration step produced NaN or infinity (step too large)."""


@dataclass(frozen=True)
class Params:
    """Coefficients of the coupled system plus integration controls.

    The escape radius must exceed 1 so that no finite fixed point of the
    symmetric system (all within radius sqrt(2)) can be mistaken for escape.
    """

    m1: float = 1.0
    m2: float = 1.0
    k1: float = 1.0
    k2: float = 1.0
    kp1: float = 1.0
    kp2: float = 1.0
    step: float = DEFAULT_STEP
    horizon: float = DEFAULT_HORIZON
    escape_radius: float = DEFAULT_ESCAPE_RADIUS

    def __post_init__(self) -> None:
        for name in ("m1", "m2", "k1", "k2", "kp1", "kp2", "step", "horizon",
                     "escape_radius"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.step <= 0.0:
            raise ValueError(f"step must be positive, got {self.step!r}")
        if self.horizon <= 0.0:
            raise ValueError(f"horizon must be positive, got {self.horizon!r}")
        if self.escape_radius <= 1.0:
            raise ValueError(
                f"escape_radius must exceed 1, got {self.escape_radius!r}")

    @classmethod
    def symmetric(cls, step: float = DEFAULT_STEP,
                  horizon: float = DEFAULT_HORIZON,
                  escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> "Params":
        """Unit coefficients: the exchange-symmetric working case."""
        return cls(step=step, horizon=horizon, escape_radius=escape_radius)


@dataclass(frozen=True)
class State:
    """Phase-space point (u, w, u', w') at time t. All fields must be finite."""

    t: float
    u: float
    w: float
    ut: float = 0.0
    wt: float = 0.0

    def __post_init__(self) -> None:
        for name in ("t", "u", "w", "ut", "wt"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"State.{name} must be finite")

    @classmethod
    def at_rest(cls, u0: float, w0: float) -> "State":
        """Initial condition with both velocities zero, at t = 0."""
        return cls(0.0, u0, w0, 0.0, 0.0)


class Line(Enum):
    """Invariant lines of the symmetric flow and their 1-D reductions."""

    U_AXIS = "u_axis"              # w = 0:  u'' = u - u**3
    W_AXIS = "w_axis"              # u = 0:  w'' = w - w**3
    DIAGONAL = "diagonal"          # w = u:  u'' = u - 2*u**3
    ANTIDIAGONAL = "antidiagonal"  # w = -u: u'' = u  (grow-up line)


def rhs(state: State, params: Params) -> tuple[float, float, float, float]:
    """Time derivative (u', w', u'', w'') of the coupled system.

    The cubic terms are grouped exactly as in the compiled kernels so that
    exchange and negation symmetry hold bit for bit, not just to rounding.
    """
    u, w = state.u, state.w
    du = state.ut
    dw = state.wt
    dut = params.m1 * u - params.k1 * (u * u * u) - params.kp1 * (u * (u * w))
    dwt = params.m2 * w - params.k2 * (w * w * w) - params.kp2 * (w * (w * u))
    return du, dw, dut, dwt


def line_acceleration(line: Line, u: float) -> float:
    """Acceleration of the 1-D reduction carried by an invariant line."""
    if line is Line.U_AXIS or line is Line.W_AXIS:
        return u - u * u * u
    if line is Line.DIAGONAL:
        return u - 2.0 * (u * u * u)
    return u


def line_energy(line: Line, u: float, ut: float) -> float:
    """First integral of the 1-D reduction; conserved along exact orbits.

    Axis lines:   ut**2/2 - u**2/2 + u**4/4
    Diagonal:     ut**2/2 - u**2/2 + u**4/2
    Antidiagonal: ut**2/2 - u**2/2
    """
    kinetic = 0.5 * (ut * ut)
    u2 = u * u
    if line is Line.U_AXIS or line is Line.W_AXIS:
        return kinetic - 0.5 * u2 + 0.25 * (u2 * u2)
    if line is Line.DIAGONAL:
        return kinetic - 0.5 * u2 + 0.5 * (u2 * u2)
    return kinetic - 0.5 * u2


@dataclass(frozen=True)
class Trajectory:
    """Time-sampled solution. Arrays are read-only after construction.

    samples[0] is the initial state; interior samples are spaced by
    output_stride integration steps; if terminated_early, the final sample is
    the first state with max(|u|, |w|) >= escape_radius regardless of stride.
    """

    params: Params
    initial: State
    scheme: str
    output_stride: int
    t: np.ndarray
    u: np.ndarray
    w: np.ndarray
    ut: np.ndarray
    wt: np.ndarray
    terminated_early: bool
    escape_time: float | None

    def __len__(self) -> int:
        return self.t.size

    def state(self, i: int) -> State:
        return State(float(self.t[i]), float(self.u[i]), float(self.w[i]),
                     float(self.ut[i]), float(self.wt[i]))

    @property
    def final(self) -> State:
        return self.state(len(self) - 1)

    def states(self):
        for i in range(len(self)):
            yield self.state(i)


def _n_steps(params: Params) -> int:
    n = int(round(params.horizon / params.step))
    if n < 1:
        raise ValueError("horizon shorter than one step")
    return n


def integrate(initial: State, params: Params,
              output_stride: int | None = None, *,
              scheme: str = "rk4") -> Trajectory:
    """Integrate from ``initial`` up to the horizon or the first escape.

    output_stride controls storage only (every stride-th step is kept); the
    default stores about 4096 samples. Raises NonFiniteState if a step
    produces NaN or infinity before the escape check triggers.
    """
    if initial.t != 0.0:
        raise ValueError(f"initial state must have t = 0, got t = {initial.t!r}")
    if scheme not in _SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {sorted(_SCHEMES)}")
    n_steps = _n_steps(params)
    if output_stride is None:
        output_stride = max(1, n_steps // _TARGET_SAMPLES)
    stride = int(output_stride)
    if stride < 1:
        raise ValueError(f"output_stride must be >= 1, got {output_stride!r}")

    cap = n_steps // stride + 2
    t = np.empty(cap)
    u = np.empty(cap)
    w = np.empty(cap)
    ut = np.empty(cap)
    wt = np.empty(cap)
    status, n_stored, escape_step = _kernels.trajectory_core(
        initial.u, initial.w, initial.ut, initial.wt,
        params.step, n_steps, stride, params.escape_radius, _SCHEMES[scheme],
        params.m1, params.k1, params.kp1, params.m2, params.k2, params.kp2,
        t, u, w, ut, wt)
    if status == _kernels.NONFINITE:
        raise NonFiniteState(
            f"non-finite state at step {escape_step} (t ~ {escape_step * params.step:.6g}); "
            f"reduce step {params.step!r}")

    arrays = []
    for a in (t, u, w, ut, wt):
        a = a[:n_stored]
        a.setflags(write=False)
        arrays.append(a)
    escaped = status == _kernels.ESCAPED
    return Trajectory(
        params=params,
        initial=initial,
        scheme=scheme,
        output_stride=stride,
        t=arrays[0], u=arrays[1], w=arrays[2], ut=arrays[3], wt=arrays[4],
        terminated_early=escaped,
        escape_time=float(arrays[0][-1]) if escaped else None,
    )
