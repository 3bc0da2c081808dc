"""Numerical laboratory for a symmetric pair of cubically coupled oscillators.

Integrate trajectories of the coupled system, locate its equilibria, sample
the potential landscape whose sublevel band predicts boundedness, classify
at-rest initial conditions as bounded or divergent, and bisect the limits of
the bounded region.
"""

from .boundary import (BoundaryPoint, BoundaryScan, BracketInvalid, Side,
                       bisect_limit, compare_with_potential, map_boundary)
from .classification import (Classification, Quadrant, SweepResult, Verdict,
                             classify, sweep)
from .dynamics import (Line, NonFiniteState, Params, State, Trajectory,
                       integrate, line_acceleration, line_energy, rhs)
from .potential import (BranchedEndpoints, PotentialGrid, endpoints,
                        locate_minima, sample_grid)
from .stationary import (Branch, CurveKind, Equilibrium, EquilibriumKind,
                         FixedPointCurve, curve_value, residual,
                         stationary_points)

__version__ = "0.1.0"

__all__ = [
    "BoundaryPoint", "BoundaryScan", "BracketInvalid", "Side",
    "bisect_limit", "compare_with_potential", "map_boundary",
    "Classification", "Quadrant", "SweepResult", "Verdict",
    "classify", "sweep",
    "Line", "NonFiniteState", "Params", "State", "Trajectory",
    "integrate", "line_acceleration", "line_energy", "rhs",
    "BranchedEndpoints", "PotentialGrid", "endpoints",
    "locate_minima", "sample_grid",
    "Branch", "CurveKind", "Equilibrium", "EquilibriumKind",
    "FixedPointCurve", "curve_value", "residual", "stationary_points",
    "__version__",
]
