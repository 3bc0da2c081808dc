import math

import pytest

from kgode import (BracketInvalid, Side, Verdict, bisect_limit, classify,
                   compare_with_potential, map_boundary)
from kgode.boundary import BoundaryPoint
from kgode.potential import evaluate

# self-generated regression values for the w0 = 0.75 lower limit
REGRESSION_U0 = 0.2044677734375
REGRESSION_P = 0.0988


def test_bisect_lower_limit_regression(params):
    # 0.125 is divergent and 0.5 (near the diagonal) is bounded
    point = bisect_limit(0.75, (0.125, 0.5), Side.LOWER, params)
    assert 0.125 < point.u0 < 0.5
    assert point.u0 == pytest.approx(REGRESSION_U0, abs=2e-3)
    assert point.bracket_width <= 1e-3
    assert point.side is Side.LOWER
    assert point.potential == evaluate(point.u0, 0.75)
    assert point.potential == pytest.approx(REGRESSION_P, abs=2e-3)
    lo, hi = point.bracket
    assert classify(lo, 0.75, params).verdict is not classify(hi, 0.75, params).verdict


def test_bisection_halves_expected_number_of_times(params):
    point = bisect_limit(0.75, (0.125, 0.5), Side.LOWER, params, tol=1e-3)
    halvings = math.ceil(math.log2(0.375 / 1e-3))
    assert point.bracket_width == pytest.approx(0.375 / 2 ** halvings, rel=1e-12)


def test_bisect_limit_near_axis(params):
    # (0.100, 0.900) is bounded, so the lower limit sits at or below 0.100
    point = bisect_limit(0.9, (0.05, 0.1), Side.LOWER, params)
    assert point.u0 <= 0.100


def test_bracket_invalid_when_verdicts_agree(params):
    with pytest.raises(BracketInvalid):
        bisect_limit(0.75, (0.3, 0.5), Side.LOWER, params)


def test_bisect_argument_validation(params):
    with pytest.raises(ValueError):
        bisect_limit(0.75, (0.5, 0.125), Side.LOWER, params)
    with pytest.raises(ValueError):
        bisect_limit(0.75, (0.125, 0.5), Side.LOWER, params, tol=0.0)


def test_map_boundary_two_lines(params):
    scan = map_boundary([0.75, 0.9], params)
    assert not scan.unbracketed
    assert 2 <= len(scan.points) <= 4
    for point in scan.points:
        assert 0.0 < point.u0 < point.w0
        assert point.bracket_width <= 1e-3
        assert point.potential == evaluate(point.u0, point.w0)
        lo, hi = point.bracket
        assert (classify(lo, point.w0, params).verdict
                is not classify(hi, point.w0, params).verdict)


def test_map_boundary_records_lines_without_bracket(params):
    # every scan point at w0 = 0.2 is divergent: the potential there is well
    # above the bounded band
    scan = map_boundary([0.2], params)
    assert scan.points == []
    assert len(scan.unbracketed) == 1
    assert scan.unbracketed[0][0] == 0.2


def test_map_boundary_validation(params):
    with pytest.raises(ValueError):
        map_boundary([0.75], params, scan_step=0.0)


def test_boundary_local_sharpness(params, capsys):
    # verdicts should flip across limit +- 2*tol; non-monotone spots are
    # recorded rather than failed
    scan = map_boundary([0.75, 0.9], params, tol=1e-3)
    fuzzy = 0
    for point in scan.points:
        below = classify(point.u0 - 2e-3, point.w0, params).verdict
        above = classify(point.u0 + 2e-3, point.w0, params).verdict
        if below is above:
            fuzzy += 1
    print(f"sharpness: {len(scan.points) - fuzzy}/{len(scan.points)} boundary "
          f"points flip verdict within 2*tol")


def test_compare_with_potential(params):
    scan = map_boundary([0.75, 0.9], params)
    report = compare_with_potential(scan.points)
    assert report.level == 0.1
    assert len(report.entries) == len(scan.points)
    for entry in report.entries:
        assert entry.deviation == entry.point.potential - 0.1
        assert entry.within_band == (abs(entry.deviation) <= 0.05)
    assert report.n_compared == sum(
        not e.in_discrepancy_region for e in report.entries)
    assert 0.0 <= report.fraction_within_band <= 1.0
    payload = report.as_dict()
    assert payload["n_points"] == len(scan.points)
    assert len(payload["entries"]) == len(scan.points)


def test_compare_flags_known_discrepancy_region():
    exact = BoundaryPoint(w0=0.75, u0=0.3, side=Side.LOWER, potential=0.1,
                          bracket_width=1e-3, bracket=(0.2995, 0.3005))
    near_axis = BoundaryPoint(w0=0.98, u0=0.02, side=Side.LOWER, potential=0.07,
                              bracket_width=1e-3, bracket=(0.0195, 0.0205))
    report = compare_with_potential([exact, near_axis])
    assert report.entries[0].deviation == 0.0
    assert not report.entries[0].in_discrepancy_region
    assert report.entries[1].in_discrepancy_region
    assert report.n_compared == 1


def test_compare_requires_points():
    with pytest.raises(ValueError):
        compare_with_potential([])
