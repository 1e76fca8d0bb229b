"""Zeros of p_n from Sturm bisection against closed forms and LAPACK."""

import math

import numpy as np
import pytest
from scipy.linalg import eigvalsh_tridiagonal

from conftest import abs_x, cached_recurrence
from ortho_sing.jacobi_spectra import (
    CenteredZeroSet,
    JacobiMatrix,
    ScaledZeroFrame,
    all_zeros,
    monic_eval_scaled,
    orthonormal_eval,
    scale_zeros,
    sturm_count,
    zeros_near,
)
from ortho_sing.measure import AnalyticFactor, GeneralizedJacobiMeasure, SingularPoint, stieltjes_recurrence

NAMES = ["chebyshev", "legendre", "abs_x"]


def _lapack(rec, n):
    return eigvalsh_tridiagonal(rec.diag[:n], np.sqrt(rec.offdiag_sq[: n - 1]))


def test_small_closed_forms():
    cheb = cached_recurrence("chebyshev", 600)
    ref = np.cos(np.array([7, 5, 3, 1]) * math.pi / 8)
    np.testing.assert_allclose(all_zeros(cheb, 4), ref, atol=1e-14)
    leg = cached_recurrence("legendre", 80)
    np.testing.assert_allclose(all_zeros(leg, 2), [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    ab = cached_recurrence("abs_x", 64)
    np.testing.assert_allclose(all_zeros(ab, 2), [-1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)


@pytest.mark.parametrize("n", [4, 50, 500])
def test_chebyshev_zeros(n):
    cheb = cached_recurrence("chebyshev", 600)
    ref = np.sort(np.cos((2 * np.arange(1, n + 1) - 1) * math.pi / (2 * n)))
    assert np.max(np.abs(all_zeros(cheb, n) - ref)) < 1e-12


@pytest.mark.parametrize("name", NAMES)
def test_against_lapack(name):
    rec = cached_recurrence(name, 300)
    for n in (1, 7, 120, 300):
        np.testing.assert_allclose(all_zeros(rec, n), _lapack(rec, n), atol=1e-13)


def test_window_near_zero():
    cheb = cached_recurrence("chebyshev", 600)
    zs = zeros_near(cheb, 100, 0.0, 2)
    ref = {1: math.cos(99 * math.pi / 200), 2: math.cos(97 * math.pi / 200),
           -1: math.cos(101 * math.pi / 200), -2: math.cos(103 * math.pi / 200)}
    assert sorted(zs.zeros) == [-2, -1, 1, 2]
    for k, v in ref.items():
        assert zs.value(k) == pytest.approx(v, abs=1e-14)
    assert zs.value(0) == 0.0


def test_window_matches_full_spectrum(rng):
    for _ in range(20):
        name = NAMES[rng.integers(3)]
        rec = cached_recurrence(name, 300)
        n = int(rng.integers(5, 300))
        x0 = float(rng.uniform(-0.99, 0.99))
        count = int(rng.integers(1, 6))
        full = all_zeros(rec, n)
        zs = zeros_near(rec, n, x0, count)
        below = full[full <= x0][::-1][:count]
        above = full[full > x0][:count]
        for i, v in enumerate(below):
            assert zs.value(-(i + 1)) == pytest.approx(v, abs=1e-12)
        for i, v in enumerate(above):
            assert zs.value(i + 1) == pytest.approx(v, abs=1e-12)
        assert len(zs.zeros) == below.size + above.size


def test_center_on_a_zero():
    rec = cached_recurrence("abs_x", 64)
    zs = zeros_near(rec, 31, 0.0, 3)
    assert zs.value(-1) == 0.0
    assert zs.value(1) > 0.0 and zs.value(-2) < 0.0
    assert scale_zeros(zs).value(-1) == 0.0


def test_window_near_spectrum_edge():
    rec = cached_recurrence("legendre", 80)
    zs = zeros_near(rec, 10, 0.99, 4)
    assert [k for k in zs.zeros if k > 0] == []
    assert len([k for k in zs.zeros if k < 0]) == 4


@pytest.mark.parametrize("name", NAMES)
def test_interlacing(name):
    rec = cached_recurrence(name, 300)
    prev = all_zeros(rec, 1)
    for n in range(2, 201):
        cur = all_zeros(rec, n)
        assert np.all(cur[:-1] < prev) and np.all(prev < cur[1:])
        prev = cur


def test_sturm_count_consistency(rng):
    rec = cached_recurrence("abs_x", 64)
    jm = JacobiMatrix.from_recurrence(rec, 60)
    z = all_zeros(rec, 60)
    t = np.sort(rng.uniform(-1, 1, 50))
    np.testing.assert_array_equal(sturm_count(jm, t), np.searchsorted(z, t))


def test_scaling_arithmetic():
    zs = CenteredZeroSet(0.0, 100, {1: 0.024048})
    assert scale_zeros(zs).value(1) == pytest.approx(2.4048)
    zs = CenteredZeroSet(0.5, 10, {1: 0.6, -1: 0.5})
    fr = scale_zeros(zs)
    assert fr.value(1) == pytest.approx(10 * 0.1 / math.sqrt(0.75))
    assert fr.value(-1) == 0.0
    assert isinstance(fr, ScaledZeroFrame) and fr.gap(-1) == 0.0


def test_zero_set_validation():
    with pytest.raises(ValueError):
        CenteredZeroSet(0.0, 5, {0: 0.1})
    with pytest.raises(ValueError):
        CenteredZeroSet(0.0, 5, {1: -0.1})
    with pytest.raises(ValueError):
        CenteredZeroSet(0.0, 5, {1: 0.3, 2: 0.2})
    with pytest.raises(ValueError):
        JacobiMatrix(np.zeros(3), np.array([1.0, 0.0]))
    rec = cached_recurrence("legendre", 80)
    with pytest.raises(ValueError):
        zeros_near(rec, 10, 1.0, 2)
    with pytest.raises(ValueError):
        all_zeros(rec, 81)


def test_polynomial_evaluation():
    leg = cached_recurrence("legendre", 80)
    x = np.linspace(-1, 1, 7)
    # orthonormal Legendre p_3 = sqrt(7/2) P_3
    p3 = math.sqrt(3.5) * 0.5 * (5 * x**3 - 3 * x)
    np.testing.assert_allclose(orthonormal_eval(leg, 3, x), p3, atol=1e-14)
    cheb = cached_recurrence("chebyshev", 600)
    # 2^n pi_n = 2 T_n for Chebyshev
    np.testing.assert_allclose(monic_eval_scaled(cheb, 40, x), 2 * np.cos(40 * np.arccos(x)), atol=1e-12)


@pytest.mark.slow
def test_scaled_gap_bounds():
    rec = cached_recurrence("abs_x", 2001)
    for n in (100, 101, 500, 1000, 2000, 2001):
        fr = scale_zeros(zeros_near(rec, n, 0.0, 6))
        for k in range(-5, 6):
            if k == -1 and fr.value(-1) == 0.0:
                continue  # x_0 coincides with the zero x_{-1}; not a gap between zeros
            g = fr.gap(k)
            assert 0.1 <= g <= 10.0


def test_other_measure_window():
    m = GeneralizedJacobiMeasure(0.3, -0.2, (SingularPoint(0.2, 0.5),), AnalyticFactor.exp())
    rec = stieltjes_recurrence(m, 200)
    full = _lapack(rec, 200)
    zs = zeros_near(rec, 200, 0.2, 3)
    j = np.searchsorted(full, 0.2, side="right")
    np.testing.assert_allclose([zs.value(k) for k in (1, 2, 3)], full[j:j + 3], atol=1e-13)
