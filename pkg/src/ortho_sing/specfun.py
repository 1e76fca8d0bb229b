r"""Bessel functions of the first kind for real order :math:`a > -1`.

Three evaluation routes are stitched together:

* ascending power series for small arguments,
* Miller backward recurrence normalised by the Neumann sum
  :math:`(x/2)^\nu = \sum_k (\nu + 2k)\Gamma(\nu + k)/k!\, J_{\nu+2k}(x)`
  in the mid range,
* the Hankel asymptotic expansion for large arguments.

All routines are vectorised over ``x``; the order is a scalar.
"""

import math

import numpy as np

__all__ = [
    "BesselDomainError",
    "bessel_j",
    "bessel_j_entire",
    "bessel_j_entire_pair",
    "bessel_j_prime",
    "entire_at_zero",
]

# crossover constants, validated against mpmath in tests/test_specfun.py
SERIES_X = 5.0
HANKEL_X = 35.0
_TINY = 1e-30
_BIG = 1e250


class BesselDomainError(ValueError):
    pass


def _check_order(a):
    a = float(a)
    if not a > -1.0:
        raise BesselDomainError(f"order must exceed -1, got {a}")
    return a


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _wrap(out, scalar):
    return float(out) if scalar else out


def entire_at_zero(a):
    """Value of :math:`G_a(0) = 1/(2^a\\Gamma(a+1))`."""
    a = _check_order(a)
    return math.exp(-a * math.log(2.0) - math.lgamma(a + 1.0))


def _series_entire(a, x):
    """G_a(x) = x^{-a} J_a(x) from the ascending series; even in x."""
    q = -0.25 * x * x
    term = np.full_like(x, entire_at_zero(a))
    total = term.copy()
    for k in range(1, 400):
        term = term * q / (k * (a + k))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _series_threshold(a):
    return max(SERIES_X, 2.0 * math.sqrt(a + 1.0))


def _hankel_threshold(a):
    return max(HANKEL_X, 0.25 * a * a)


def _hankel(a, x):
    mu = 4.0 * a * a
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 2000):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        mag = np.abs(term)
        if k > a + 1:
            active &= mag < prev
        sign = -1.0 if (k // 2) % 2 else 1.0
        contrib = np.where(active, sign * term, 0.0)
        if k % 2:
            q += contrib
        else:
            p += contrib
        active &= mag > 1e-17
        prev = mag
        if not active.any():
            break
    # cos(x - c) expanded so that x itself is never rounded before reduction
    c = (0.5 * a + 0.25) * math.pi
    cc, sc = math.cos(c), math.sin(c)
    cx, sx = np.cos(x), np.sin(x)
    cos_chi = cx * cc + sx * sc
    sin_chi = sx * cc - cx * sc
    return np.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


def _neumann_coeffs(nu, kmax):
    coeffs = np.empty(kmax + 1)
    coeffs[0] = math.gamma(nu + 1.0)
    for k in range(1, kmax + 1):
        coeffs[k] = (nu + 2 * k) * math.exp(math.lgamma(nu + k) - math.lgamma(k + 1.0))
    return coeffs


def _miller(a, x):
    """J_a(x) and J_{a+1}(x) by backward recurrence; x > 0."""
    if a < 0.0:
        nu, m = a, 0
    else:
        m = int(math.floor(a))
        nu = a - m
    xmax = float(np.max(x))
    top = max(m + 2.0, xmax)
    start = int(top + 20.0 + 10.0 * math.sqrt(top))
    coeffs = _neumann_coeffs(nu, start // 2 + 1)

    f_hi = np.zeros_like(x)
    f = np.full_like(x, _TINY)
    total = coeffs[start // 2] * f if start % 2 == 0 else np.zeros_like(x)
    ja = np.zeros_like(x)
    ja1 = np.zeros_like(x)
    if start == m + 1:
        ja1 = f.copy()
    # per-step growth is at most 2 (nu + start) / min(x); rescaling that often
    # keeps |f| below 1e300 without testing every step
    growth = max(10.0, 2.0 * (abs(nu) + start) / float(np.min(x)))
    every = max(1, int(50.0 / math.log10(growth)))
    for i in range(start, 0, -1):
        f_lo = (2.0 * (nu + i) / x) * f - f_hi
        f_hi, f = f, f_lo
        idx = i - 1
        if idx % 2 == 0:
            total += coeffs[idx // 2] * f
        if idx == m:
            ja = f.copy()
        elif idx == m + 1:
            ja1 = f.copy()
        if i % every:
            continue
        big = np.abs(f) > _BIG
        if big.any():
            s = np.where(big, 1.0 / _BIG, 1.0)
            f *= s
            f_hi *= s
            total *= s
            ja *= s
            ja1 *= s
    norm = np.power(0.5 * x, nu) / total
    return ja * norm, ja1 * norm


def _jv_positive(a, x):
    """J_a on x >= 0 (array)."""
    out = np.empty_like(x)
    s_cut = _series_threshold(a)
    h_cut = _hankel_threshold(a)
    small = x <= s_cut
    large = x >= h_cut
    mid = ~(small | large)
    if small.any():
        xs = x[small]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[small] = np.power(xs, a) * _series_entire(a, xs)
        zero = xs == 0.0
        if zero.any():
            fill = 1.0 if a == 0.0 else (0.0 if a > 0.0 else np.inf)
            sub = out[small]
            sub[zero] = fill
            out[small] = sub
    if large.any():
        out[large] = _hankel(a, x[large])
    if mid.any():
        out[mid] = _miller(a, x[mid])[0]
    return out


def bessel_j(a, x):
    """Bessel function of the first kind :math:`J_a(x)` for ``x >= 0``.

    Parameters
    ----------
    a : float
        Order, ``a > -1``.
    x : array_like
        Non-negative arguments.

    Returns
    -------
    float or ndarray
    """
    a = _check_order(a)
    arr, scalar = _as_array(x)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise BesselDomainError("bessel_j requires x >= 0; use bessel_j_entire for negative x")
    flat = arr.reshape(-1)
    return _wrap(_jv_positive(a, flat).reshape(arr.shape), scalar)


def bessel_j_entire(a, x):
    r"""Even entire function :math:`G_a(x) = x^{-a} J_a(x)`.

    Defined for every real ``x``; ``G_a(0) = 1/(2^a \Gamma(a+1))``.
    """
    a = _check_order(a)
    arr, scalar = _as_array(x)
    ax = np.abs(arr).reshape(-1)
    out = np.empty_like(ax)
    small = ax <= _series_threshold(a)
    if small.any():
        out[small] = _series_entire(a, ax[small])
    big = ~small
    if big.any():
        xb = ax[big]
        out[big] = _jv_positive(a, xb) * np.exp(-a * np.log(xb))
    return _wrap(out.reshape(arr.shape), scalar)


def bessel_j_entire_pair(a, x):
    """``(G_a(x), G_{a+1}(x))`` sharing one backward recurrence in the mid range."""
    a = _check_order(a)
    arr, scalar = _as_array(x)
    ax = np.abs(arr).reshape(-1)
    g0 = np.empty_like(ax)
    g1 = np.empty_like(ax)
    small = ax <= _series_threshold(a)
    large = ax >= _hankel_threshold(a + 1.0)
    mid = ~(small | large)
    if small.any():
        g0[small] = _series_entire(a, ax[small])
        g1[small] = _series_entire(a + 1.0, ax[small])
    if large.any():
        xl = ax[large]
        g0[large] = _hankel(a, xl) * np.exp(-a * np.log(xl))
        g1[large] = _hankel(a + 1.0, xl) * np.exp(-(a + 1.0) * np.log(xl))
    if mid.any():
        xm = ax[mid]
        ja, ja1 = _miller(a, xm)
        g0[mid] = ja * np.exp(-a * np.log(xm))
        g1[mid] = ja1 * np.exp(-(a + 1.0) * np.log(xm))
    shape = arr.shape
    return _wrap(g0.reshape(shape), scalar), _wrap(g1.reshape(shape), scalar)


def bessel_j_prime(a, x):
    """Derivative :math:`J_a'(x) = (a/x) J_a(x) - J_{a+1}(x)` for ``x > 0``."""
    a = _check_order(a)
    arr, scalar = _as_array(x)
    if np.any(arr <= 0) or np.any(np.isnan(arr)):
        raise BesselDomainError("bessel_j_prime requires x > 0")
    flat = arr.reshape(-1)
    out = (a / flat) * _jv_positive(a, flat) - _jv_positive(a + 1.0, flat)
    return _wrap(out.reshape(arr.shape), scalar)
