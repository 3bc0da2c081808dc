"""Potential landscape on the (u, w) plane for the symmetric system.

The potential at (u, w) accumulates the stationary residuals f and g along
two straight legs ending on their root-locus curves:

    P(u, w) = integral of f(x, w) dx from u to u_end
            + integral of g(u, y) dy from w to w_end

where (u_end, w_end) are the curve points on the branch selected by the sign
of u + w (plus branch for u + w >= 0, minus below; the value is therefore
discontinuous across the antidiagonal, which is the grow-up line and carries
no boundedness verdict). Because f and g are cubic polynomials the legs have
the closed form implemented by :func:`evaluate`; :func:`evaluate_quadrature`
integrates them numerically instead and serves as an independent oracle.

P vanishes at the two coupled equilibria (+-1/sqrt(2), +-1/sqrt(2)), which
are its only local minima; the sublevel band 0 < P < 0.1 predicts which
at-rest initial conditions stay bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stationary import Branch, curve_value


@dataclass(frozen=True)
class BranchedEndpoints:
    """Leg endpoints on the root-locus curves, branch chosen by sign(u + w)."""

    u_end: float
    w_end: float


def endpoints(u: float, w: float) -> BranchedEndpoints:
    """Curve endpoints for the legs anchored at (u, w).

    The plus branch is used on the tie line u + w = 0 by convention.
    """
    branch = Branch.PLUS if w + u >= 0.0 else Branch.MINUS
    return BranchedEndpoints(curve_value(w, branch), curve_value(u, branch))


def evaluate(u: float, w: float) -> float:
    """Closed-form potential value at (u, w)."""
    ends = endpoints(u, w)
    a = ends.u_end
    b = ends.w_end
    u2 = u * u
    w2 = w * w
    a2 = a * a
    b2 = b * b
    u3 = u2 * u
    w3 = w2 * w
    a3 = a2 * a
    b3 = b2 * b
    u4 = u2 * u2
    w4 = w2 * w2
    a4 = a2 * a2
    b4 = b2 * b2
    return (0.5 * ((a2 + b2) - (u2 + w2))
            - 0.25 * ((a4 + b4) - (u4 + w4))
            - (u * (b3 - w3) + w * (a3 - u3)) / 3.0)


def _simpson(values: np.ndarray, h: float) -> float:
    # composite Simpson over an odd number of equally spaced samples
    return (h / 3.0) * (values[0] + values[-1]
                        + 4.0 * values[1:-1:2].sum()
                        + 2.0 * values[2:-2:2].sum())


def evaluate_quadrature(u: float, w: float, panels: int = 1024) -> float:
    """Potential by composite-Simpson integration of the defining legs.

    Independent of :func:`evaluate`; the two must agree to near machine
    precision since the integrands are cubic polynomials.
    """
    if panels < 2 or panels % 2:
        raise ValueError(f"panels must be even and >= 2, got {panels!r}")
    ends = endpoints(u, w)
    x = np.linspace(u, ends.u_end, panels + 1)
    fx = x - x * x * x - (x * x) * w
    leg_u = _simpson(fx, (ends.u_end - u) / panels)
    y = np.linspace(w, ends.w_end, panels + 1)
    gy = y - y * y * y - (y * y) * u
    leg_w = _simpson(gy, (ends.w_end - w) / panels)
    return leg_u + leg_w


@dataclass(frozen=True)
class PotentialGrid:
    """Dense potential samples; values[i, j] = evaluate(u[i], w[j])."""

    u_range: tuple[float, float]
    w_range: tuple[float, float]
    n_u: int
    n_w: int
    u: np.ndarray
    w: np.ndarray
    values: np.ndarray


def sample_grid(u_range: tuple[float, float], w_range: tuple[float, float],
                n_u: int, n_w: int) -> PotentialGrid:
    """Evaluate the closed form on a uniform inclusive lattice."""
    if n_u < 2 or n_w < 2:
        raise ValueError(f"need at least 2 samples per axis, got {n_u}x{n_w}")
    u = np.linspace(u_range[0], u_range[1], n_u)
    w = np.linspace(w_range[0], w_range[1], n_w)
    values = np.empty((n_u, n_w))
    # scalar loop keeps each entry bit-identical to evaluate(u_i, w_j)
    for i, ui in enumerate(u):
        for j, wj in enumerate(w):
            values[i, j] = evaluate(float(ui), float(wj))
    for a in (u, w, values):
        a.setflags(write=False)
    return PotentialGrid((float(u[0]), float(u[-1])), (float(w[0]), float(w[-1])),
                         n_u, n_w, u, w, values)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(fn, a: float, b: float, tol: float = 1e-10) -> float:
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = fn(c)
    fd = fn(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def _refine_minimum(u: float, w: float, span: float) -> tuple[float, float]:
    # coordinate descent with golden-section line searches
    for _ in range(80):
        u_new = _golden_min(lambda x: evaluate(x, w), u - span, u + span)
        w_new = _golden_min(lambda y: evaluate(u_new, y), w - span, w + span)
        moved = max(abs(u_new - u), abs(w_new - w))
        u, w = u_new, w_new
        if moved < 1e-8:
            break
    return u, w


def locate_minima(grid: PotentialGrid) -> list[tuple[float, float, float]]:
    """Strict interior lattice minima of the grid, refined on the closed form.

    A lattice point counts when it is below all 8 neighbours; each is then
    refined to about 1e-6 in both coordinates by coordinate descent. The grid
    must cover [-1.5, 1.5]^2 with at least 101 samples per axis.
    """
    if grid.n_u < 101 or grid.n_w < 101:
        raise ValueError("grid resolution must be >= 101 per axis")
    if (grid.u_range[0] > -1.5 or grid.u_range[1] < 1.5
            or grid.w_range[0] > -1.5 or grid.w_range[1] < 1.5):
        raise ValueError("grid must cover [-1.5, 1.5]^2")

    v = grid.values
    inner = v[1:-1, 1:-1]
    below = np.ones_like(inner, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            neighbour = v[1 + di:v.shape[0] - 1 + di, 1 + dj:v.shape[1] - 1 + dj]
            below &= inner < neighbour
    span = 2.0 * max(grid.u[1] - grid.u[0], grid.w[1] - grid.w[0])

    minima = []
    for i, j in zip(*np.nonzero(below)):
        u0 = float(grid.u[i + 1])
        w0 = float(grid.w[j + 1])
        u_min, w_min = _refine_minimum(u0, w0, span)
        minima.append((u_min, w_min, evaluate(u_min, w_min)))
    minima.sort()
    return minima
