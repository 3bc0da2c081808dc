import numpy as np
import pytest

from kgode import (NonFiniteState, Params, Quadrant, Verdict, classify, sweep)
from kgode.classification import CELL_BOUNDED, CELL_DIVERGENT, CELL_NONFINITE

DIVERGENT_PAIR = [(0.125, 0.750), (0.025, 0.750)]
BOUNDED_PAIR = [(0.800, 0.900), (0.100, 0.900)]


def test_paper_quartet_verdicts(params):
    for u0, w0 in DIVERGENT_PAIR:
        assert classify(u0, w0, params).verdict is Verdict.DIVERGENT
    for u0, w0 in BOUNDED_PAIR:
        assert classify(u0, w0, params).verdict is Verdict.BOUNDED


@pytest.mark.parametrize("radius", [5.0, 10.0, 100.0])
def test_verdicts_stable_in_escape_radius(radius):
    p = Params.symmetric(escape_radius=radius)
    for u0, w0 in DIVERGENT_PAIR:
        assert classify(u0, w0, p).verdict is Verdict.DIVERGENT
    for u0, w0 in BOUNDED_PAIR:
        assert classify(u0, w0, p).verdict is Verdict.BOUNDED


def test_divergent_pair_escapes_through_opposite_quadrants(params):
    a = classify(*DIVERGENT_PAIR[0], params)
    b = classify(*DIVERGENT_PAIR[1], params)
    assert {a.escape_quadrant, b.escape_quadrant} == {Quadrant.PM, Quadrant.MP}


def test_classification_invariants(params):
    for u0, w0 in DIVERGENT_PAIR + BOUNDED_PAIR:
        c = classify(u0, w0, params)
        if c.verdict is Verdict.BOUNDED:
            assert c.max_amplitude < params.escape_radius
            assert c.escape_time is None and c.escape_quadrant is None
        else:
            assert c.escape_time is not None
            assert 0.0 < c.escape_time <= params.horizon
            assert c.max_amplitude >= params.escape_radius


def test_origin_is_bounded(params):
    c = classify(0.0, 0.0, params)
    assert c.verdict is Verdict.BOUNDED
    assert c.max_amplitude == 0.0


def test_diagonal_initial_conditions_all_bounded(params):
    # on u = w the reduction has a confining quartic energy
    for v in np.arange(0.1, 1.01, 0.1):
        assert classify(v, v, params).verdict is Verdict.BOUNDED


def test_antidiagonal_initial_conditions_all_divergent(params):
    # on u = -w the amplitude grows like cosh
    for v in np.arange(0.1, 1.01, 0.1):
        assert classify(v, -v, params).verdict is Verdict.DIVERGENT


def test_exchange_symmetry(params):
    a = classify(0.125, 0.750, params)
    b = classify(0.750, 0.125, params)
    assert a.verdict is b.verdict
    assert b.escape_quadrant is a.escape_quadrant.exchanged()
    assert a.escape_time == b.escape_time
    rng = np.random.default_rng(17)
    for _ in range(5):
        u0, w0 = rng.uniform(-1.0, 1.0, 2)
        x = classify(u0, w0, params)
        y = classify(w0, u0, params)
        assert x.verdict is y.verdict
        assert x.max_amplitude == y.max_amplitude


def test_negation_symmetry(params):
    a = classify(0.125, 0.750, params)
    b = classify(-0.125, -0.750, params)
    assert a.verdict is b.verdict
    assert b.escape_quadrant is a.escape_quadrant.negated()
    for u0, w0 in BOUNDED_PAIR:
        assert classify(-u0, -w0, params).verdict is Verdict.BOUNDED


def test_quadrant_helpers():
    assert Quadrant.of(1.0, -2.0) is Quadrant.PM
    assert Quadrant.of(-1.0, 2.0) is Quadrant.MP
    assert Quadrant.of(0.0, 0.0) is Quadrant.PP  # zero counts as positive
    assert Quadrant.PM.exchanged() is Quadrant.MP
    assert Quadrant.PP.exchanged() is Quadrant.PP
    assert Quadrant.PM.negated() is Quadrant.MP
    assert Quadrant.PP.negated() is Quadrant.MM


def test_classify_propagates_nonfinite():
    bad = Params(step=1.0, horizon=20.0, escape_radius=1e300)
    with pytest.raises(NonFiniteState):
        classify(8.0, 3.0, bad)


def test_single_cell_sweep(params):
    result = sweep((0.8, 0.8), (0.9, 0.9), 1, 1, params)
    assert result.status.shape == (1, 1)
    assert result.status[0, 0] == CELL_BOUNDED
    assert np.isnan(result.escape_time[0, 0])
    assert result.quadrant(0, 0) is None


def test_sweep_lattice_includes_endpoints(params):
    result = sweep((0.1, 0.5), (0.2, 0.9), 5, 8, params)
    assert result.u0[0] == 0.1 and result.u0[-1] == 0.5
    assert result.w0[0] == 0.2 and result.w0[-1] == 0.9
    assert result.status.shape == (5, 8)


def test_sweep_cells_match_classify_bitwise(params):
    result = sweep((0.1, 0.9), (0.1, 0.9), 4, 4, params)
    for i in range(4):
        for j in range(4):
            c = classify(float(result.u0[i]), float(result.w0[j]), params)
            expected = CELL_BOUNDED if c.verdict is Verdict.BOUNDED else CELL_DIVERGENT
            assert result.status[i, j] == expected
            assert result.max_amplitude[i, j] == c.max_amplitude
            if c.verdict is Verdict.DIVERGENT:
                assert result.escape_time[i, j] == c.escape_time
                assert result.quadrant(i, j) is c.escape_quadrant


def test_sweep_is_deterministic(params):
    a = sweep((0.0, 1.2), (0.0, 1.2), 13, 13, params)
    b = sweep((0.0, 1.2), (0.0, 1.2), 13, 13, params)
    assert np.array_equal(a.status, b.status)
    assert np.array_equal(a.escape_time, b.escape_time, equal_nan=True)
    assert np.array_equal(a.max_amplitude, b.max_amplitude)


def test_sweep_records_nonfinite_cells_without_raising():
    bad = Params(step=1.0, horizon=20.0, escape_radius=1e300)
    result = sweep((7.0, 8.0), (3.0, 3.0), 2, 1, bad)
    assert CELL_NONFINITE in result.status


def test_sweep_validation(params):
    with pytest.raises(ValueError):
        sweep((0.0, 1.0), (0.0, 1.0), 0, 3, params)
