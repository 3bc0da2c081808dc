"""Bisection mapping of the bounded-region limits in initial-condition space.

Along a scan line of fixed w0 the diagonal point u0 = w0 is bounded (it sits
on an invariant line with a confining quartic energy), so the bounded band is
searched by stepping u0 down from the diagonal through the wedge
w0 > u0 > 0. Every adjacent pair of scan points with opposite verdicts is
bisected to the requested tolerance; the midpoint, tagged with the potential
value there, is a boundary point. A transition from divergent (below) to
bounded (above) is a lower limit, the reverse an upper limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .classification import Verdict, classify
from .dynamics import Params
from .potential import evaluate


class BracketInvalid(ValueError):
    """Both bracket endpoints classify the same way; nothing to bisect."""


class Side(Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class BoundaryPoint:
    """A bounded/divergent verdict flip on a fixed-w0 scan line.

    u0 is the midpoint of the final bracket, whose endpoints straddle the
    verdict change; bracket_width is the final bracket width (<= tolerance).
    """

    w0: float
    u0: float
    side: Side
    potential: float
    bracket_width: float
    bracket: tuple[float, float]


@dataclass
class BoundaryScan:
    """map_boundary output: boundary points plus per-line bracketing failures."""

    points: list[BoundaryPoint] = field(default_factory=list)
    unbracketed: list[tuple[float, str]] = field(default_factory=list)


def bisect_limit(w0: float, bracket: tuple[float, float], side: Side,
                 params: Params, tol: float = 1e-3) -> BoundaryPoint:
    """Bisect u0 along fixed w0 until the verdict-change bracket is <= tol."""
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got {bracket!r}")
    v_lo = classify(lo, w0, params).verdict
    v_hi = classify(hi, w0, params).verdict
    if v_lo == v_hi:
        raise BracketInvalid(
            f"both endpoints of {bracket!r} at w0 = {w0!r} are {v_lo.value}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if classify(mid, w0, params).verdict == v_lo:
            lo = mid
        else:
            hi = mid
    u0 = 0.5 * (lo + hi)
    return BoundaryPoint(w0=w0, u0=u0, side=side,
                         potential=evaluate(u0, w0),
                         bracket_width=hi - lo, bracket=(lo, hi))


def map_boundary(w0_list: list[float], params: Params, *,
                 tol: float = 1e-3, scan_step: float = 0.05) -> BoundaryScan:
    """Locate the bounded-band limits on each scan line of the wedge.

    For each w0 the lattice u0 = w0 - k*scan_step (staying strictly inside
    0 < u0 < w0) is classified from the diagonal downward, and every verdict
    change between neighbours is bisected. A line with no verdict change is
    recorded in ``unbracketed`` rather than raising. Lines whose basin splits
    into several intervals at scan resolution yield one point pair per
    interval rather than being merged.
    """
    if scan_step <= 0.0:
        raise ValueError(f"scan_step must be positive, got {scan_step!r}")
    scan = BoundaryScan()
    for w0 in w0_list:
        w0 = float(w0)
        lattice = []
        k = 1
        while True:
            u0 = w0 - k * scan_step
            if u0 <= 0.0:
                break
            lattice.append(u0)
            k += 1
        if not lattice:
            scan.unbracketed.append((w0, "scan line too short for the step"))
            continue
        verdicts = [classify(u0, w0, params).verdict for u0 in lattice]
        if all(v == verdicts[0] for v in verdicts):
            scan.unbracketed.append(
                (w0, f"all scanned points {verdicts[0].value}"))
            continue
        # lattice is ordered downward from the diagonal
        for (u_hi, v_hi), (u_lo, v_lo) in zip(zip(lattice, verdicts),
                                              zip(lattice[1:], verdicts[1:])):
            if v_hi == v_lo:
                continue
            side = Side.LOWER if v_lo == Verdict.DIVERGENT else Side.UPPER
            scan.points.append(
                bisect_limit(w0, (u_lo, u_hi), side, params, tol=tol))
    return scan


@dataclass(frozen=True)
class ComparisonEntry:
    point: BoundaryPoint
    deviation: float
    within_band: bool
    in_discrepancy_region: bool


@dataclass(frozen=True)
class PotentialComparison:
    """How well the potential level set tracks the bisected boundary."""

    level: float
    band: float
    entries: list[ComparisonEntry]
    n_compared: int
    n_within_band: int
    fraction_within_band: float
    outliers: list[ComparisonEntry]

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "band": self.band,
            "n_points": len(self.entries),
            "n_compared": self.n_compared,
            "n_within_band": self.n_within_band,
            "fraction_within_band": self.fraction_within_band,
            "n_outliers": len(self.outliers),
            "entries": [
                {
                    "w0": e.point.w0,
                    "u0": e.point.u0,
                    "side": e.point.side.value,
                    "P_value": e.point.potential,
                    "deviation": e.deviation,
                    "within_band": e.within_band,
                    "in_discrepancy_region": e.in_discrepancy_region,
                }
                for e in self.entries
            ],
        }


def compare_with_potential(points: list[BoundaryPoint], level: float = 0.1, *,
                           band: float = 0.05,
                           discrepancy_center: tuple[float, float] = (0.0, 1.0),
                           discrepancy_radius: float = 0.1) -> PotentialComparison:
    """Report each boundary point's potential against the predicted level.

    Points within ``discrepancy_radius`` of ``discrepancy_center`` are the
    known region where the level set and the bisected boundary drift apart;
    they are flagged and excluded from the band fraction.
    """
    if not points:
        raise ValueError("no boundary points to compare")
    cx, cy = discrepancy_center
    entries = []
    for p in points:
        deviation = p.potential - level
        near = (p.u0 - cx) ** 2 + (p.w0 - cy) ** 2 <= discrepancy_radius ** 2
        entries.append(ComparisonEntry(
            point=p, deviation=deviation,
            within_band=abs(deviation) <= band,
            in_discrepancy_region=near))
    compared = [e for e in entries if not e.in_discrepancy_region]
    n_within = sum(e.within_band for e in compared)
    fraction = n_within / len(compared) if compared else float("nan")
    return PotentialComparison(
        level=level, band=band, entries=entries,
        n_compared=len(compared), n_within_band=n_within,
        fraction_within_band=fraction,
        outliers=[e for e in entries if not e.within_band])
