"""Coefficient tables for the Sturm normal form of ``c J_a + d J_{a+1}``.

Every polynomial coefficient used by the convexity/comparison arguments lives
here so that each one is pinned by a single unit test.
"""

__all__ = [
    "ode_coeffs",
    "potential_coeffs",
    "potential_slope_coeffs",
    "omega_iv_coeffs",
    "omega_iv_slope_coeffs",
]


def ode_coeffs(a, c, d, x):
    """(u, v, w) of the second-order ODE ``u y'' + v y' + w y = 0``."""
    s = c * c + d * d
    p = (2 * a + 1) * c * d
    u = p * x**2 + s * x**3
    v = 2 * p * x + s * x**2
    w = (
        -a * (a + 1) * p
        - (a * a * c * c + d * d + 2 * a * d * d + a * a * d * d) * x
        + p * x**2
        + s * x**3
    )
    return u, v, w


def potential_coeffs(a, c, d):
    """Numerator coefficients a0..a4 of the normal-form potential C(x)."""
    s = c * c + d * d
    a0 = 4 * s**2
    a1 = 8 * (2 * a + 1) * c * d * s
    a2 = (2 * a + 1) * (d * d - c * c) * (2 * a * (c * c - d * d) - c * c - 3 * d * d)
    a3 = -4 * c * d * (2 * a + 1) * (2 * a * a * s + a * (c * c + 3 * d * d) - c * c)
    a4 = -4 * a * c * c * d * d * (a + 1) * (2 * a + 1) ** 2
    return a0, a1, a2, a3, a4


def potential_slope_coeffs(a, c, d):
    """Coefficients b0..b3 with C'(x) = (2a+1) sum b_i x^{3-i} / (2 x^3 (s x + p)^3)."""
    s = c * c + d * d
    b0 = s**2 * (2 * a * s - c * c + 3 * d * d)
    b1 = 6 * c * d * s * (2 * a * a * s + a * (c * c + 3 * d * d) - c * c)
    b2 = 2 * (2 * a + 1) * c * c * d * d * (6 * a * a * s + a * (5 * c * c + 7 * d * d) - c * c)
    b3 = 4 * a * (a + 1) * (2 * a + 1) ** 2 * c**3 * d**3
    return b0, b1, b2, b3


def omega_iv_coeffs(a, c, d):
    """e0..e4 of Omega(x) = sum e_i x^{-i} under the Liouville map z' = x^3/u."""
    s = c * c + d * d
    e0 = s**2
    e1 = 2 * (2 * a + 1) * c * d * s
    e2 = -0.25 * (
        4 * a * a * (c * c - d * d) ** 2 + 8 * a * d * d * (d * d - c * c) - c**4 - 2 * c * c * d * d + 3 * d**4
    )
    e3 = -c * d * (2 * a + 1) * (2 * a * a * s + a * (c * c + 3 * d * d) - 2 * c * c - d * d)
    e4 = -0.25 * c * c * d * d * (2 * a + 1) ** 2 * (4 * a * a + 4 * a - 3)
    return e0, e1, e2, e3, e4


def omega_iv_slope_coeffs(a, c, d):
    """f0..f3 of Omega'(x) = sum f_i x^{-i-2}; equals -(i+1) e_{i+1}."""
    s = c * c + d * d
    f0 = -2 * c * d * (2 * a + 1) * s
    f1 = 0.5 * (c**4 * (4 * a * a - 1) + c * c * d * d * (-8 * a * a - 8 * a - 2) + d**4 * (4 * a * a + 8 * a + 3))
    f2 = 3 * c * d * (2 * a + 1) * (c * c * (2 * a * a + a - 2) + d * d * (2 * a * a + 3 * a - 1))
    # sign fixed so that f3 = -4 e4
    f3 = c * c * d * d * (2 * a + 1) ** 2 * (4 * a * a + 4 * a - 3)
    return f0, f1, f2, f3
