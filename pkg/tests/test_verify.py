"""Verification suites on the documented parameter points and random grids."""

import math

import numpy as np
import pytest

from conftest import abs_x, cached_recurrence
from ortho_sing.asymptotics import PhaseContext, trig_constants
from ortho_sing.bessel_zeros import ComboSpec, combo_zeros_range
from ortho_sing.measure import GeneralizedJacobiMeasure, SingularPoint
from ortho_sing.verify import (
    HypothesisError,
    SpacingReport,
    SpacingRow,
    comparison_suite,
    convexity_suite,
    gap_limit_suite,
    sample_case_grid,
    simplicity_check,
    spacing_experiment,
    target_subsequence,
)


def test_convexity_documented_points():
    reps = convexity_suite([("i", 1.0, 1.0, 1.0)], k_max=100)
    reps += convexity_suite([("ii", 0.25, 1.0, 2.0), ("iv", -0.75, -1.0, 1.0)], k_max=50)
    assert all(r.passed for r in reps)
    assert [len(r.rows) for r in reps] == [100, 50, 50]


def test_comparison_documented_points():
    reps = comparison_suite([("i", 1.0, 1.0, 1.0), ("ii", 0.0, 1.0, 1.0), ("iii", -0.75, -1.0, 2.0)], k_max=100)
    assert all(r.passed for r in reps)
    # case (i) stores pi < gap
    assert all(rhs > math.pi for _, _, rhs in reps[0].rows)


def test_violation_is_recorded():
    # the comparison (i) claim fails below a = 1/2: J_0 gaps are below pi
    j = combo_zeros_range(ComboSpec(0.0, 1.0, 0.0), 5)
    assert np.all(np.diff(j) < math.pi)
    from ortho_sing.verify import InequalityReport
    rep = InequalityReport("comparison", "i", (0.0, 1.0, 0.0), 4,
                           [(k, math.pi, float(j[k] - j[k - 1])) for k in range(1, 5)])
    assert not rep.passed and len(rep.violations) == 4


@pytest.mark.parametrize("family,point", [
    ("convexity", ("i", 0.2, 1.0, 1.0)),
    ("convexity", ("iv", -0.75, 1.0, 1.0)),
    ("convexity", ("iv", -0.75, -2.0, 1.0)),
    ("comparison", ("ii", 0.5, 2.0, 1.0)),
    ("comparison", ("i", 1.0, 1.0, 0.0)),
])
def test_hypothesis_mismatch(family, point):
    suite = convexity_suite if family == "convexity" else comparison_suite
    with pytest.raises(HypothesisError):
        suite([point], k_max=5)


def test_unknown_case():
    with pytest.raises(ValueError):
        convexity_suite([("v", 1.0, 1.0, 1.0)], k_max=5)


def test_gap_limit_documented_points():
    rows = gap_limit_suite([(-0.5, 1.0, 0.0), (0.0, 1.0, 0.0), (2.5, 1.0, -3.0)])
    exact, bessel0, mixed = rows
    assert max(exact.deviations) < 1e-10 and exact.passed
    assert bessel0.deviations[-1] < 1e-6 and bessel0.passed
    assert mixed.deviations[0] > mixed.deviations[1] > mixed.deviations[2] and mixed.passed
    assert not gap_limit_suite([(0.0, 1.0, 0.0)], bound=1e-20)[0].passed


def test_simplicity_documented_points():
    reps = simplicity_check([(0.0, 1.0, 1.0), (-0.9, 3.0, -1.0), (-0.5, 1.0, 1.0)], k_max=50)
    assert all(r.passed for r in reps)
    assert all(r.checked == 100 for r in reps)
    j = combo_zeros_range(ComboSpec(-0.5, 1.0, 1.0), 50)
    np.testing.assert_allclose(j, 0.75 * math.pi + math.pi * np.arange(50), rtol=1e-13)


@pytest.mark.slow
def test_random_inequality_grids(rng):
    for family, cases, suite in (("convexity", "i ii iii iv", convexity_suite),
                                 ("comparison", "i ii iii", comparison_suite)):
        for case in cases.split():
            grid = sample_case_grid(family, case, 200, rng)
            reps = suite(grid, k_max=100)
            bad = [r for r in reps if not r.passed]
            assert not bad, (family, case, bad[0].params, bad[0].violations[:3])


@pytest.mark.slow
def test_abs_weight_even_odd_limits():
    rec = cached_recurrence("abs_x", 2001)
    ns = list(range(200, 2001, 200)) + list(range(201, 2002, 200))
    reports = spacing_experiment(abs_x(1.0), 1, 1, ns, rec=rec)
    even, odd = reports
    assert (even.residue, odd.residue, even.modulus) == (0, 1, 2)
    assert even.rows[-1].predicted == pytest.approx(3.115253, abs=1e-6)
    assert odd.rows[-1].predicted == pytest.approx(3.183881, abs=1e-6)
    assert even.verdict == odd.verdict == "converging"
    assert even.rel_errors()[-1] < 0.02 and odd.rel_errors()[-1] < 0.02
    # the limits differ by more than ten times the error reached at n = 2000
    split = abs(even.rows[-1].predicted - odd.rows[-1].predicted)
    assert split == pytest.approx(0.068628, abs=1e-6)
    assert split > 10 * max(even.rows[-1].abs_error, odd.rows[-1].abs_error)
    assert even.decay_exponent < -0.5


@pytest.mark.slow
def test_chebyshev_control_is_clock_spacing():
    m = GeneralizedJacobiMeasure(-0.5, -0.5, (SingularPoint(0.3, 0.0),))
    reports = spacing_experiment(m, 1, 1, [500, 1000, 2000])
    (rep,) = reports
    assert rep.modulus == 1
    assert rep.rows[-1].predicted == pytest.approx(math.pi, rel=1e-12)
    assert rep.rel_errors()[-1] < 0.005


def test_spacing_threads_deterministic():
    rec = cached_recurrence("abs_x", 64)
    a = spacing_experiment(abs_x(1.0), 1, 1, [40, 41, 60, 61], rec=rec, threads=1)
    b = spacing_experiment(abs_x(1.0), 1, 1, [61, 40, 60, 41], rec=rec, threads=2)
    assert [r.rows for r in a] == [r.rows for r in b]


def test_spacing_report_verdict():
    row = lambda n, e: SpacingRow(n, 0, 0, 0, 0, 1.0 + e, 1.0, e)
    assert SpacingReport("m", 1, 1, 0, 1, [row(10, 0.05), row(20, 0.01), row(40, 0.011)], 0.02).verdict == "converging"
    assert SpacingReport("m", 1, 1, 0, 1, [row(10, 0.01), row(20, 0.005), row(40, 0.01)], 0.02).verdict == "failed"
    assert SpacingReport("m", 1, 1, 0, 1, [row(10, 0.05), row(20, 0.03)], 0.02).verdict == "failed"


def test_target_subsequence():
    m = GeneralizedJacobiMeasure(0.0, 0.0, (SingularPoint(0.3, 0.5),))
    out = target_subsequence(m, 1, 0.6, 0.8, 5000)
    dists = [d for _, d in out]
    assert all(b < a for a, b in zip(dists, dists[1:]))
    assert dists[-1] < 1e-2
    ctx = PhaseContext.from_measure(m)
    n, dist = out[-1]
    c, d = trig_constants(ctx, 1, n)
    assert min(math.hypot(c - 0.6, d - 0.8), math.hypot(c + 0.6, d + 0.8)) == pytest.approx(dist, abs=1e-9)
    with pytest.raises(ValueError):
        target_subsequence(m, 1, 0.0, 0.0, 10)
