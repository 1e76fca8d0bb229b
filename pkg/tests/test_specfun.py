import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ortho_sing.specfun import (
    BesselDomainError,
    bessel_j,
    bessel_j_entire,
    bessel_j_prime,
    entire_at_zero,
)

ORDERS = [-0.95, -0.5, -0.25, 0.0, 0.3, 1.0, 2.5, 7.0, 20.0, 55.5, 100.0]
ARGS = [1e-3, 0.4, 2.0, 4.9, 5.1, 9.7, 11.0, 20.0, 34.0, 36.0, 80.0, 300.0, 2500.0, 1e4]


def _mp_j(a, x):
    return float(mpmath.besselj(a, x))


@pytest.mark.parametrize("a", ORDERS)
def test_against_mpmath(a):
    x = np.array(ARGS)
    got = bessel_j(a, x)
    for xi, gi in zip(x, got):
        ref = _mp_j(a, xi)
        # relative to the local amplitude so zeros of J do not inflate the error
        amp = max(abs(ref), float(abs(mpmath.besselj(a, xi) ** 2 + mpmath.bessely(a, xi) ** 2)) ** 0.5)
        assert abs(gi - ref) <= 5e-12 * amp, (a, xi, gi, ref)


def test_small_argument_limits():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(2.0, 0.0) == 0.0
    assert entire_at_zero(0.0) == 1.0
    assert entire_at_zero(-0.5) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)
    assert bessel_j_entire(1.5, 0.0) == pytest.approx(1 / (2**1.5 * math.gamma(2.5)), rel=1e-15)


def test_half_integer_closed_forms():
    x = np.linspace(0.1, 60, 300)
    assert np.allclose(bessel_j(-0.5, x), np.sqrt(2 / (np.pi * x)) * np.cos(x), atol=1e-14)
    assert np.allclose(bessel_j(0.5, x), np.sqrt(2 / (np.pi * x)) * np.sin(x), atol=1e-14)


@pytest.mark.parametrize("a", [-0.7, 0.0, 3.2])
def test_entire_form_even_and_consistent(a):
    x = np.linspace(0.05, 40, 97)
    g = bessel_j_entire(a, x)
    assert np.array_equal(g, bessel_j_entire(a, -x))
    assert np.allclose(g * x**a, bessel_j(a, x), rtol=1e-13, atol=1e-300)


def test_derivative_against_mpmath():
    for a in (-0.6, 0.0, 4.5):
        for x in (0.3, 3.0, 17.0, 120.0):
            ref = float(mpmath.besselj(a, x, derivative=1))
            assert bessel_j_prime(a, x) == pytest.approx(ref, abs=1e-13)


def test_scalar_and_shape():
    assert isinstance(bessel_j(1.0, 2.0), float)
    out = bessel_j(1.0, np.ones((2, 3)))
    assert out.shape == (2, 3)


def test_domain_errors():
    with pytest.raises(BesselDomainError):
        bessel_j(-1.0, 1.0)
    with pytest.raises(BesselDomainError):
        bessel_j(0.0, -1.0)
    with pytest.raises(BesselDomainError):
        bessel_j_prime(0.0, 0.0)


@settings(max_examples=60, deadline=None)
@given(a=st.floats(0.05, 30.0), x=st.floats(0.05, 200.0))
def test_three_term_recurrence(a, x):
    # J_a + J_{a+2} = (2(a+1)/x) J_{a+1}
    lo, mid, hi = bessel_j(a, x), bessel_j(a + 1.0, x), bessel_j(a + 2.0, x)
    scale = max(abs(lo), abs(mid), abs(hi), 1e-300)
    amp = max(scale, math.sqrt(2 / (math.pi * x)) if x > a else scale)
    assert abs(lo + hi - 2 * (a + 1.0) / x * mid) <= 1e-11 * amp * (1 + 2 * (a + 1) / x)
