import math

import numpy as np
import pytest

from kgode import EquilibriumKind, endpoints, locate_minima, sample_grid, stationary_points
from kgode.potential import evaluate, evaluate_quadrature

INV_SQRT2 = 1.0 / math.sqrt(2.0)


# -- endpoints ----------------------------------------------------------------

def test_endpoints_fixed_at_coupled_equilibrium():
    ends = endpoints(INV_SQRT2, INV_SQRT2)
    assert ends.u_end == pytest.approx(INV_SQRT2, abs=1e-12)
    assert ends.w_end == pytest.approx(INV_SQRT2, abs=1e-12)


def test_endpoints_plus_branch_above_antidiagonal():
    ends = endpoints(0.0, 0.5)
    assert ends.u_end == pytest.approx(-0.25 + math.sqrt(0.0625 + 1.0), abs=1e-15)
    assert ends.w_end == 1.0


def test_endpoints_minus_branch_below_antidiagonal():
    ends = endpoints(-1.0, -1.0)
    assert ends.u_end == pytest.approx(0.5 - math.sqrt(1.25), abs=1e-12)
    assert ends.w_end == pytest.approx(0.5 - math.sqrt(1.25), abs=1e-12)


def test_endpoints_tie_line_uses_plus_branch():
    ends = endpoints(0.3, -0.3)
    assert ends.u_end == pytest.approx(0.15 + math.sqrt(0.0225 + 1.0), abs=1e-15)


# -- closed form vs quadrature ---------------------------------------------------

def test_potential_vanishes_at_coupled_equilibria():
    assert abs(evaluate(INV_SQRT2, INV_SQRT2)) < 1e-12
    assert abs(evaluate(-INV_SQRT2, -INV_SQRT2)) < 1e-12


def test_potential_at_bounded_showcase():
    assert 0.0 < evaluate(0.800, 0.900) < 0.1


def test_quadrature_zero_length_legs():
    assert abs(evaluate_quadrature(INV_SQRT2, INV_SQRT2)) < 1e-12


def test_quadrature_matches_closed_form_pointwise():
    assert abs(evaluate(0.3, 0.6) - evaluate_quadrature(0.3, 0.6)) < 1e-8


def test_quadrature_negation_mirror():
    assert abs(evaluate_quadrature(-0.3, -0.6) - evaluate_quadrature(0.3, 0.6)) < 1e-12


def test_quadrature_panel_validation():
    with pytest.raises(ValueError):
        evaluate_quadrature(0.1, 0.2, panels=3)


def test_closed_form_agrees_with_quadrature_everywhere():
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 1000:
        u, w = rng.uniform(-2.0, 2.0, 2)
        if abs(u + w) < 1e-3:
            continue
        checked += 1
        assert abs(evaluate(u, w) - evaluate_quadrature(u, w)) < 1e-8


def test_exchange_symmetry():
    rng = np.random.default_rng(6)
    for _ in range(200):
        u, w = rng.uniform(-2.0, 2.0, 2)
        assert abs(evaluate(u, w) - evaluate(w, u)) < 1e-12


def test_negation_symmetry():
    rng = np.random.default_rng(8)
    checked = 0
    while checked < 200:
        u, w = rng.uniform(-2.0, 2.0, 2)
        if abs(u + w) < 1e-3:
            continue
        checked += 1
        assert abs(evaluate(-u, -w) - evaluate(u, w)) < 1e-12


def test_monotone_along_diagonal_and_antidiagonal():
    diag = [evaluate(s, s) for s in np.linspace(0.8, 5.0, 100)]
    assert all(b > a for a, b in zip(diag, diag[1:]))
    anti = [evaluate(s, -s) for s in np.linspace(0.5, 5.0, 100)]
    assert all(b < a for a, b in zip(anti, anti[1:]))


# -- grids and minima -------------------------------------------------------------

def test_sample_grid_matches_scalar_evaluation():
    grid = sample_grid((0.0, 1.0), (0.0, 1.0), 2, 2)
    for i, u in enumerate((0.0, 1.0)):
        for j, w in enumerate((0.0, 1.0)):
            assert grid.values[i, j] == evaluate(u, w)


def test_sample_grid_validation():
    with pytest.raises(ValueError):
        sample_grid((0.0, 1.0), (0.0, 1.0), 1, 5)


@pytest.fixture(scope="module")
def grid301():
    return sample_grid((-1.5, 1.5), (-1.5, 1.5), 301, 301)


def test_grid_has_exactly_two_lattice_minima(grid301):
    v = grid301.values
    inner = v[1:-1, 1:-1]
    below = np.ones_like(inner, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == dj == 0:
                continue
            below &= inner < v[1 + di:301 - 1 + di, 1 + dj:301 - 1 + dj]
    i, j = np.nonzero(below)
    assert len(i) == 2
    spots = sorted(zip(grid301.u[i + 1], grid301.w[j + 1]))
    assert math.hypot(spots[0][0] + 0.7, spots[0][1] + 0.7) < 0.05
    assert math.hypot(spots[1][0] - 0.7, spots[1][1] - 0.7) < 0.05


def test_diagonal_ray_increases_beyond_minimum(grid301):
    diag = [grid301.values[i, i] for i in range(301) if grid301.u[i] > 0.72]
    assert all(b > a for a, b in zip(diag, diag[1:]))


def test_locate_minima(grid301):
    minima = locate_minima(grid301)
    assert len(minima) == 2
    (u_neg, w_neg, p_neg), (u_pos, w_pos, p_pos) = minima
    assert abs(u_neg + INV_SQRT2) < 1e-5 and abs(w_neg + INV_SQRT2) < 1e-5
    assert abs(u_pos - INV_SQRT2) < 1e-5 and abs(w_pos - INV_SQRT2) < 1e-5
    assert p_neg < 1e-8 and p_pos < 1e-8


def test_locate_minima_agrees_with_equilibria(grid301):
    coupled = sorted((e.u, e.w) for e in stationary_points()
                     if e.kind is EquilibriumKind.COUPLED_NONTRIVIAL)
    minima = locate_minima(grid301)
    for (u_min, w_min, _), (u_eq, w_eq) in zip(minima, coupled):
        assert abs(u_min - u_eq) < 1e-5
        assert abs(w_min - w_eq) < 1e-5


def test_locate_minima_preconditions(grid301):
    coarse = sample_grid((-1.5, 1.5), (-1.5, 1.5), 51, 51)
    with pytest.raises(ValueError):
        locate_minima(coarse)
    small = sample_grid((-1.0, 1.0), (-1.0, 1.0), 101, 101)
    with pytest.raises(ValueError):
        locate_minima(small)
