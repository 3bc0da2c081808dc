"""Self-contained SVG figures: phase planes, contour maps, sweep maps, overlays.

No plotting library is used; figures are assembled as plain SVG text with
fixed float formatting, so identical inputs always produce identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .boundary import BoundaryPoint, Side
from .classification import CELL_BOUNDED, CELL_DIVERGENT, SweepResult
from .dynamics import Trajectory
from .potential import PotentialGrid
from .stationary import Branch, CurveKind, Equilibrium, FixedPointCurve

_PLOT_W = 560
_PLOT_H = 560
_ML, _MR, _MT, _MB = 64, 22, 40, 52

_CURVE_COLORS = {CurveKind.U_OF_W: "#c03030", CurveKind.W_OF_U: "#3050c0"}


class PlotKind(Enum):
    PHASE_PLANE = "phase_plane"
    CONTOUR = "contour"
    BOUNDARY_OVERLAY = "boundary_overlay"
    TIME_SERIES = "time_series"


@dataclass(frozen=True)
class PlotSpec:
    """What to draw and over which window; layers name optional overlays."""

    kind: PlotKind
    u_range: tuple[float, float]
    w_range: tuple[float, float]
    layers: tuple[str, ...] = ()
    title: str = ""


def _f(x: float) -> str:
    return f"{x:.2f}"


class _Canvas:
    def __init__(self, x_range, y_range, title="", xlabel="u", ylabel="w"):
        self.x0, self.x1 = float(x_range[0]), float(x_range[1])
        self.y0, self.y1 = float(y_range[0]), float(y_range[1])
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.body: list[str] = []

    def px(self, x: float) -> float:
        return _ML + (x - self.x0) / (self.x1 - self.x0) * _PLOT_W

    def py(self, y: float) -> float:
        return _MT + (self.y1 - y) / (self.y1 - self.y0) * _PLOT_H

    def polyline(self, xs, ys, color: str, width: float = 1.2,
                 dash: str = "") -> None:
        pts = " ".join(f"{_f(self.px(x))},{_f(self.py(y))}" for x, y in zip(xs, ys))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.body.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"{extra}/>')

    def line(self, x_a, y_a, x_b, y_b, color: str, width: float = 1.0,
             dash: str = "") -> None:
        self.polyline([x_a, x_b], [y_a, y_b], color, width, dash)

    def circle(self, x, y, r: float = 3.5, fill: str = "#000000",
               stroke: str = "none") -> None:
        self.body.append(
            f'<circle cx="{_f(self.px(x))}" cy="{_f(self.py(y))}" r="{r}" '
            f'fill="{fill}" stroke="{stroke}"/>')

    def square(self, x, y, half: float = 3.5, fill: str = "#2050c0") -> None:
        cx, cy = self.px(x), self.py(y)
        self.body.append(
            f'<rect x="{_f(cx - half)}" y="{_f(cy - half)}" '
            f'width="{_f(2 * half)}" height="{_f(2 * half)}" fill="{fill}"/>')

    def cell(self, x_lo, x_hi, y_lo, y_hi, fill: str) -> None:
        x = self.px(x_lo)
        y = self.py(y_hi)
        w = self.px(x_hi) - x
        h = self.py(y_lo) - y
        self.body.append(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" '
            f'fill="{fill}"/>')

    def _frame(self) -> list[str]:
        out = [
            f'<rect x="{_ML}" y="{_MT}" width="{_PLOT_W}" height="{_PLOT_H}" '
            f'fill="none" stroke="#000000" stroke-width="1"/>'
        ]
        for i in range(5):
            fx = self.x0 + (self.x1 - self.x0) * i / 4
            fy = self.y0 + (self.y1 - self.y0) * i / 4
            x = self.px(fx)
            y = self.py(fy)
            out.append(f'<line x1="{_f(x)}" y1="{_MT + _PLOT_H}" x2="{_f(x)}" '
                       f'y2="{_MT + _PLOT_H + 5}" stroke="#000000"/>')
            out.append(f'<text x="{_f(x)}" y="{_MT + _PLOT_H + 20}" font-size="12" '
                       f'text-anchor="middle" font-family="sans-serif">{fx:.2f}</text>')
            out.append(f'<line x1="{_ML - 5}" y1="{_f(y)}" x2="{_ML}" '
                       f'y2="{_f(y)}" stroke="#000000"/>')
            out.append(f'<text x="{_ML - 9}" y="{_f(y + 4)}" font-size="12" '
                       f'text-anchor="end" font-family="sans-serif">{fy:.2f}</text>')
        out.append(f'<text x="{_ML + _PLOT_W / 2:.1f}" y="{_MT + _PLOT_H + 40}" '
                   f'font-size="14" text-anchor="middle" font-family="sans-serif">'
                   f'{self.xlabel}</text>')
        out.append(f'<text x="18" y="{_MT + _PLOT_H / 2:.1f}" font-size="14" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'transform="rotate(-90 18 {_MT + _PLOT_H / 2:.1f})">{self.ylabel}</text>')
        if self.title:
            out.append(f'<text x="{_ML + _PLOT_W / 2:.1f}" y="26" font-size="15" '
                       f'text-anchor="middle" font-family="sans-serif">{self.title}</text>')
        return out

    def svg(self) -> str:
        total_w = _ML + _PLOT_W + _MR
        total_h = _MT + _PLOT_H + _MB
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" '
            f'height="{total_h}" viewBox="0 0 {total_w} {total_h}">',
            f'<rect width="{total_w}" height="{total_h}" fill="#ffffff"/>',
            '<defs><clipPath id="plot">'
            f'<rect x="{_ML}" y="{_MT}" width="{_PLOT_W}" height="{_PLOT_H}"/>'
            '</clipPath></defs>',
            '<g clip-path="url(#plot)">',
        ]
        tail = ["</g>"] + self._frame() + ["</svg>"]
        return "\n".join(head + self.body + tail) + "\n"


def _lerp_color(t: float) -> str:
    lo = (36, 64, 160)
    hi = (240, 214, 70)
    rgb = tuple(round(a + (b - a) * t) for a, b in zip(lo, hi))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _contour_cells(canvas: _Canvas, grid: PotentialGrid,
                   clip: tuple[float, float]) -> None:
    # filled cells inside the clip window, merged along rows of equal color;
    # everything outside (lo, hi) stays white
    lo, hi = clip
    levels = 24
    du = grid.u[1] - grid.u[0]
    dw = grid.w[1] - grid.w[0]
    quantized = np.where(
        (grid.values > lo) & (grid.values < hi),
        np.minimum((grid.values - lo) / (hi - lo) * levels, levels - 1).astype(int),
        -1)
    for i in range(grid.n_u):
        row = quantized[i]
        j = 0
        while j < grid.n_w:
            level = row[j]
            if level < 0:
                j += 1
                continue
            j_end = j
            while j_end + 1 < grid.n_w and row[j_end + 1] == level:
                j_end += 1
            canvas.cell(grid.u[i] - 0.5 * du, grid.u[i] + 0.5 * du,
                        grid.w[j] - 0.5 * dw, grid.w[j_end] + 0.5 * dw,
                        _lerp_color((level + 0.5) / levels))
            j = j_end + 1


def _equilibria_layer(canvas: _Canvas, equilibria: list[Equilibrium]) -> None:
    for e in equilibria:
        canvas.circle(e.u, e.w, r=4.0, fill="#000000")


def _curves_layer(canvas: _Canvas, n_samples: int = 400) -> None:
    s = np.linspace(canvas.y0, canvas.y1, n_samples)
    for kind in CurveKind:
        for branch in Branch:
            curve = FixedPointCurve(kind, branch)
            values = np.array([curve.value(x) for x in s])
            if kind is CurveKind.U_OF_W:
                canvas.polyline(values, s, _CURVE_COLORS[kind])
            else:
                canvas.polyline(s, values, _CURVE_COLORS[kind])


def phase_plane_svg(traj: Trajectory | None = None, *,
                    equilibria: list[Equilibrium] | None = None,
                    curves: bool = False,
                    u_range=(-1.5, 1.5), w_range=(-1.5, 1.5),
                    title: str = "") -> str:
    canvas = _Canvas(u_range, w_range, title=title)
    canvas.line(canvas.x0, 0.0, canvas.x1, 0.0, "#c8c8c8")
    canvas.line(0.0, canvas.y0, 0.0, canvas.y1, "#c8c8c8")
    if curves:
        _curves_layer(canvas)
    if traj is not None:
        canvas.polyline(traj.u, traj.w, "#1f4e9c", width=1.0)
        canvas.circle(traj.u[0], traj.w[0], r=3.0, fill="#107010")
    if equilibria:
        _equilibria_layer(canvas, equilibria)
    return canvas.svg()


def time_series_svg(traj: Trajectory, title: str = "") -> str:
    lo = min(traj.u.min(), traj.w.min())
    hi = max(traj.u.max(), traj.w.max())
    pad = 0.05 * (hi - lo) or 1.0
    canvas = _Canvas((traj.t[0], max(traj.t[-1], traj.t[0] + 1.0)),
                     (lo - pad, hi + pad), title=title,
                     xlabel="t", ylabel="amplitude")
    canvas.polyline(traj.t, traj.u, "#c03030")
    canvas.polyline(traj.t, traj.w, "#3050c0")
    return canvas.svg()


def stationary_svg(equilibria: list[Equilibrium],
                   window=(-2.0, 2.0), title: str = "") -> str:
    canvas = _Canvas(window, window, title=title)
    canvas.line(canvas.x0, 0.0, canvas.x1, 0.0, "#c8c8c8")
    canvas.line(0.0, canvas.y0, 0.0, canvas.y1, "#c8c8c8")
    _curves_layer(canvas)
    _equilibria_layer(canvas, equilibria)
    return canvas.svg()


def contour_svg(grid: PotentialGrid, clip: tuple[float, float] = (0.0, 0.1),
                title: str = "") -> str:
    canvas = _Canvas(grid.u_range, grid.w_range, title=title)
    _contour_cells(canvas, grid, clip)
    return canvas.svg()


def sweep_svg(result: SweepResult, title: str = "") -> str:
    canvas = _Canvas((result.u0[0], result.u0[-1]),
                     (result.w0[0], result.w0[-1]),
                     title=title, xlabel="u0", ylabel="w0")
    du = result.u0[1] - result.u0[0] if result.n_u > 1 else 1.0
    dw = result.w0[1] - result.w0[0] if result.n_w > 1 else 1.0
    colors = {CELL_BOUNDED: "#2b5fb8", CELL_DIVERGENT: "#ededed"}
    for i in range(result.n_u):
        row = result.status[i]
        j = 0
        while j < result.n_w:
            code = int(row[j])
            j_end = j
            while j_end + 1 < result.n_w and int(row[j_end + 1]) == code:
                j_end += 1
            canvas.cell(result.u0[i] - 0.5 * du, result.u0[i] + 0.5 * du,
                        result.w0[j] - 0.5 * dw, result.w0[j_end] + 0.5 * dw,
                        colors.get(code, "#d03030"))
            j = j_end + 1
    return canvas.svg()


def boundary_overlay_svg(grid: PotentialGrid, points: list[BoundaryPoint],
                         clip: tuple[float, float] = (0.0, 0.1),
                         title: str = "") -> str:
    """Bisected limits over the clipped potential: squares lower, circles upper."""
    canvas = _Canvas(grid.u_range, grid.w_range, title=title,
                     xlabel="u0", ylabel="w0")
    _contour_cells(canvas, grid, clip)
    diag_lo = max(canvas.x0, canvas.y0)
    diag_hi = min(canvas.x1, canvas.y1)
    canvas.line(diag_lo, diag_lo, diag_hi, diag_hi, "#000000", width=1.0)
    for p in points:
        if p.side is Side.LOWER:
            canvas.square(p.u0, p.w0, half=3.2, fill="#2050c0")
        else:
            canvas.circle(p.u0, p.w0, r=3.2, fill="#000000")
    return canvas.svg()


def render(spec: PlotSpec, *, trajectory=None, grid=None, points=None,
           equilibria=None) -> str:
    """Dispatch a PlotSpec to the matching figure builder."""
    if spec.kind is PlotKind.TIME_SERIES:
        return time_series_svg(trajectory, title=spec.title)
    if spec.kind is PlotKind.CONTOUR:
        return contour_svg(grid, title=spec.title)
    if spec.kind is PlotKind.BOUNDARY_OVERLAY:
        return boundary_overlay_svg(grid, points or [], title=spec.title)
    return phase_plane_svg(
        trajectory,
        equilibria=equilibria if "equilibria" in spec.layers else None,
        curves="curves" in spec.layers,
        u_range=spec.u_range, w_range=spec.w_range, title=spec.title)
