"""Equilibria of the symmetric coupled system and their root-locus curves.

With unit coefficients the stationary problem is

    f(u, w) = u - u**3 - u**2*w = 0
    g(u, w) = w - w**3 - u*w**2 = 0

Solving f = 0 for u at fixed w (and g = 0 for w at fixed u) away from the
axes gives two hyperbola-like branches each,

    u = -w/2 +- sqrt((w/2)**2 + 1)

whose intersections are the genuinely coupled equilibria. The full set of
equilibria is found numerically by Newton iteration seeded from a lattice.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

_log = logging.getLogger(__name__)

_RESIDUAL_TOL = 1e-12
_DEDUPE_RADIUS = 1e-8
_SNAP_ZERO = 1e-12
_KIND_EPS = 1e-9
_NEWTON_MAX_ITER = 60


def residual(u: float, w: float) -> tuple[float, float]:
    """Stationary residual (f, g); both vanish exactly at an equilibrium."""
    u2 = u * u
    w2 = w * w
    f = u - u2 * u - u2 * w
    g = w - w2 * w - w2 * u
    return f, g


class CurveKind(Enum):
    U_OF_W = "u_of_w"  # root locus of f, u as a function of w
    W_OF_U = "w_of_u"  # root locus of g, w as a function of u


class Branch(Enum):
    PLUS = "plus"
    MINUS = "minus"


def curve_value(s: float, branch: Branch) -> float:
    """-s/2 +- sqrt((s/2)**2 + 1), the off-axis root of x**2 + s*x - 1 = 0."""
    half = 0.5 * s
    root = math.sqrt(half * half + 1.0)
    return -half + root if branch is Branch.PLUS else -half - root


@dataclass(frozen=True)
class FixedPointCurve:
    """One branch of a root-locus curve of f (U_OF_W) or g (W_OF_U)."""

    kind: CurveKind
    branch: Branch

    def value(self, s: float) -> float:
        """Curve coordinate at parameter s (s is w for U_OF_W, u for W_OF_U)."""
        return curve_value(s, self.branch)


class EquilibriumKind(Enum):
    TRIVIAL_ORIGIN = "trivial_origin"
    AXIS = "axis"
    COUPLED_NONTRIVIAL = "coupled_nontrivial"


@dataclass(frozen=True)
class Equilibrium:
    u: float
    w: float
    kind: EquilibriumKind


def _kind_of(u: float, w: float) -> EquilibriumKind:
    u_zero = abs(u) < _KIND_EPS
    w_zero = abs(w) < _KIND_EPS
    if u_zero and w_zero:
        return EquilibriumKind.TRIVIAL_ORIGIN
    if u_zero or w_zero:
        return EquilibriumKind.AXIS
    return EquilibriumKind.COUPLED_NONTRIVIAL


def stationary_points(search_box: tuple[tuple[float, float], tuple[float, float]] = ((-2.0, 2.0), (-2.0, 2.0)),
                      grid_n: int = 32) -> list[Equilibrium]:
    """All equilibria inside the box, by lattice-seeded 2-D Newton iteration.

    The Jacobian is analytic; seeds where it is rank-deficient are skipped.
    Converged roots are kept when max(|f|, |g|) < 1e-12, deduplicated within
    1e-8, and returned sorted lexicographically. The box must contain
    [-2, 2]^2 and grid_n must be at least 16.
    """
    (u_lo, u_hi), (w_lo, w_hi) = search_box
    if u_lo > -2.0 or u_hi < 2.0 or w_lo > -2.0 or w_hi < 2.0:
        raise ValueError(f"search box must contain [-2, 2]^2, got {search_box!r}")
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n!r}")

    uu, ww = np.meshgrid(np.linspace(u_lo, u_hi, grid_n),
                         np.linspace(w_lo, w_hi, grid_n))
    u = uu.ravel().copy()
    w = ww.ravel().copy()
    alive = np.ones(u.size, dtype=bool)
    n_singular = 0

    for _ in range(_NEWTON_MAX_ITER):
        u2 = u * u
        w2 = w * w
        f = u - u2 * u - u2 * w
        g = w - w2 * w - w2 * u
        j11 = 1.0 - 3.0 * u2 - 2.0 * (u * w)
        j12 = -u2
        j21 = -w2
        j22 = 1.0 - 3.0 * w2 - 2.0 * (u * w)
        det = j11 * j22 - j12 * j21
        singular = alive & (np.abs(det) < 1e-13)
        if singular.any():
            n_singular += int(singular.sum())
            alive &= ~singular
        with np.errstate(all="ignore"):
            du = (j22 * f - j12 * g) / det
            dw = (j11 * g - j21 * f) / det
        u = np.where(alive, u - du, u)
        w = np.where(alive, w - dw, w)
        bad = alive & (~np.isfinite(u) | ~np.isfinite(w) | (np.abs(u) > 1e6) | (np.abs(w) > 1e6))
        alive &= ~bad
    if n_singular:
        _log.debug("skipped %d Newton seeds with singular Jacobian", n_singular)

    roots: list[tuple[float, float]] = []
    for ui, wi in zip(u[alive], w[alive]):
        ui = 0.0 if abs(ui) < _SNAP_ZERO else float(ui)
        wi = 0.0 if abs(wi) < _SNAP_ZERO else float(wi)
        fi, gi = residual(ui, wi)
        if max(abs(fi), abs(gi)) >= _RESIDUAL_TOL:
            continue
        if not (u_lo <= ui <= u_hi and w_lo <= wi <= w_hi):
            continue
        roots.append((ui, wi))

    roots.sort()
    unique: list[tuple[float, float]] = []
    for p in roots:
        if any(math.hypot(p[0] - q[0], p[1] - q[1]) < _DEDUPE_RADIUS for q in unique):
            continue
        unique.append(p)

    return [Equilibrium(ui, wi, _kind_of(ui, wi)) for ui, wi in unique]
