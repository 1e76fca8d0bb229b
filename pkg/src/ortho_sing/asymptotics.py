r"""Leading-order asymptotics of monic orthogonal polynomials.

Everything here is a closed-form evaluation built on a :class:`PhaseContext`:
the boundary phases :math:`\psi_\nu`, the singularity phases
:math:`\varphi_\nu`, the constants selecting the limiting Bessel combination,
the Szego constant :math:`D_\infty`, and the leading terms of :math:`\pi_n`
in the bulk, near ``x = 1`` and near an interior singularity.

Indexing: singularities are numbered ``1..n0``; interval ``nu`` is
``(x_nu, x_{nu+1})`` with ``x_0 = -1`` and ``x_{n0+1} = 1``.

Monic values underflow for large ``n``, so every ``pi_n`` routine accepts
``scaled=True`` to return ``2**n * pi_n(x)`` instead.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C

from .bessel_zeros import ComboSpec, indexed_zero
from .specfun import bessel_j, bessel_j_entire, bessel_j_prime

__all__ = [
    "AsymptoticDomainError",
    "PhaseContext",
    "log_h_chebyshev",
    "conformal_phi",
    "boundary_angle",
    "psi_nu",
    "phase_phi_nu",
    "trig_constants",
    "combo_spec",
    "predicted_spacing",
    "d_infinity",
    "asym_pn_away",
    "asym_pn_near",
    "asym_pn_endpoint",
]

# |c| or |d| below this is an exact zero polluted by rounding of n * arccos
TRIG_SNAP = 1e-12


class AsymptoticDomainError(ValueError):
    pass


def log_h_chebyshev(h, tol=1e-13, max_log2=14):
    """Chebyshev coefficients of ``log h`` on ``[-1, 1]``.

    Uses the stored coefficients when the factor carries them, otherwise
    interpolates at Chebyshev points of degree ``2**m - 1`` until the last
    four coefficients fall below ``tol`` relative to the largest.
    """
    if h.log_chebyshev is not None:
        return np.asarray(h.log_chebyshev, dtype=float)
    for m in range(4, max_log2 + 1):
        coef = C.chebinterpolate(lambda t: np.log(h(t)), 2**m - 1)
        scale = max(1.0, float(np.max(np.abs(coef))))
        if np.max(np.abs(coef[-4:])) < tol * scale:
            return np.trim_zeros(coef, "b") if np.any(coef) else coef[:1]
    raise AsymptoticDomainError("log h is not resolved by a Chebyshev series of degree 2**14")


@dataclass(frozen=True)
class PhaseContext:
    measure: object
    log_h_coeffs: np.ndarray
    d_infinity: float

    @classmethod
    def from_measure(cls, measure):
        coeffs = log_h_chebyshev(measure.h)
        return cls(measure, coeffs, _d_inf(measure, coeffs))

    def hilbert_log_h(self, x):
        r"""``sqrt(1-x^2)/pi * PV int log h(t) / (sqrt(1-t^2) (t - x)) dt``.

        Termwise ``T_j -> pi U_{j-1}`` and ``U_{j-1} = T_j' / j``.
        """
        x = np.asarray(x, dtype=float)
        g = self.log_h_coeffs
        if g.size < 2:
            return np.zeros_like(x) if x.ndim else 0.0
        scaled = np.zeros_like(g)
        j = np.arange(1, g.size)
        scaled[1:] = g[1:] / j
        out = np.sqrt(1.0 - x * x) * C.chebval(x, C.chebder(scaled))
        return float(out) if out.ndim == 0 else out

    def positions(self):
        return [-1.0] + [s.position for s in self.measure.singularities] + [1.0]

    def singularity(self, nu):
        if not 1 <= nu <= self.measure.n0:
            raise IndexError(f"singularity index must be in 1..{self.measure.n0}, got {nu}")
        return self.measure.singularities[nu - 1]


def _d_inf(measure, coeffs):
    return math.exp(-0.5 * measure.total_exponent * math.log(2.0) + 0.5 * float(coeffs[0]))


def d_infinity(measure):
    """Szego constant ``2**(-(alpha+beta+sum lambda)/2) * exp(mean of log h / 2)``.

    The mean is the Chebyshev-weighted average ``(1/pi) int log h / sqrt(1-x^2)``,
    which is the constant Chebyshev coefficient of ``log h``.
    """
    return _d_inf(measure, log_h_chebyshev(measure.h))


def conformal_phi(z):
    """Exterior map ``z + sqrt(z^2 - 1)`` of ``C \\ [-1, 1]`` onto ``|w| > 1``, real ``z``."""
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) <= 1.0):
        raise AsymptoticDomainError("exterior branch needs |z| > 1")
    az = np.abs(z)
    # z^2 - 1 factored to keep precision near |z| = 1
    out = np.sign(z) * (az + np.sqrt((az - 1.0) * (az + 1.0)))
    return float(out) if out.ndim == 0 else out


def boundary_angle(x):
    """Angle of the boundary value ``exp(i arccos x)``."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise AsymptoticDomainError("boundary angle needs |x| <= 1")
    out = np.arccos(x)
    return float(out) if out.ndim == 0 else out


def _interior(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0) or np.any(np.isnan(x)):
        raise AsymptoticDomainError("x must lie strictly inside (-1, 1)")
    return x


def psi_nu(ctx, nu, x):
    """Boundary phase of the Szego function on interval ``nu``."""
    m = ctx.measure
    if not 0 <= nu <= m.n0:
        raise IndexError(f"interval index must be in 0..{m.n0}, got {nu}")
    x = _interior(x)
    tail = sum(s.exponent for s in m.singularities[nu:])
    out = 0.5 * (m.total_exponent * np.arccos(x) - (m.alpha + tail) * math.pi + ctx.hilbert_log_h(x))
    return float(out) if np.ndim(out) == 0 else out


def phase_phi_nu(ctx, nu):
    """``psi_nu(x_nu) - (1 + lambda_nu) pi / 4 + arccos(x_nu) / 2``."""
    s = ctx.singularity(nu)
    return psi_nu(ctx, nu, s.position) - (1.0 + s.exponent) * math.pi / 4.0 + 0.5 * s.angle


def _n_theta(s, n):
    # n * arccos(x_nu) reduced mod 2 pi, exactly when the angle is rational
    if s.angle_rational is not None:
        p, q = s.angle_rational
        return math.pi * ((n * p) % (2 * q)) / q
    return math.fmod(n * s.angle, 2.0 * math.pi)


def trig_constants(ctx, nu, n, side="right"):
    """``(cos, sin)`` of ``n arccos(x_nu) + phi_nu``.

    The same pair governs both sides of the singularity: on the left the
    scaled zeros are the negative zeros of the same Bessel combination.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    s = ctx.singularity(nu)
    xi = _n_theta(s, int(n)) + phase_phi_nu(ctx, nu)
    c, d = math.cos(xi), math.sin(xi)
    if abs(c) < TRIG_SNAP:
        c, d = 0.0, math.copysign(1.0, d)
    elif abs(d) < TRIG_SNAP:
        c, d = math.copysign(1.0, c), 0.0
    return c, d


def combo_spec(ctx, nu, n):
    """Bessel combination whose zeros are the limiting scaled zeros."""
    c, d = trig_constants(ctx, nu, n)
    return ComboSpec(0.5 * (ctx.singularity(nu).exponent - 1.0), c, d)


def predicted_spacing(ctx, nu, n, k):
    """Limit of ``a_{k+1,n} - a_{k,n}`` along the class of ``n``; ``j_0 = 0``."""
    spec = combo_spec(ctx, nu, n)
    return indexed_zero(spec, k + 1) - indexed_zero(spec, k)


def _check_away(ctx, nu, x, delta):
    pts = ctx.positions()
    if not 0 <= nu < len(pts) - 1:
        raise IndexError(f"interval index must be in 0..{len(pts) - 2}, got {nu}")
    lo, hi = pts[nu] + delta, pts[nu + 1] - delta
    if np.any(x <= lo) or np.any(x >= hi):
        raise AsymptoticDomainError(f"x must lie in ({lo}, {hi}) for interval {nu} with delta={delta}")


def _prefactor(ctx, n, x, scaled):
    base = ctx.d_infinity / np.power(1.0 - x * x, 0.25)
    return base if scaled else base * 2.0 ** (-n)


def asym_pn_away(ctx, nu, n, x, delta=0.1, scaled=False):
    """Leading term of ``pi_n(x)`` at distance ``> delta`` from every singular point."""
    x = np.asarray(x, dtype=float)
    _check_away(ctx, nu, x, delta)
    theta = np.arccos(x)
    # n * theta kept apart so the n-independent part is not rounded against it
    phase = n * theta + (0.5 * theta + psi_nu(ctx, nu, x) - math.pi / 4.0)
    out = _prefactor(ctx, n, x, scaled) * np.sqrt(2.0 / ctx.measure.weight(x)) * np.cos(phase)
    return float(out) if out.ndim == 0 else out


def asym_pn_near(ctx, nu, n, x, delta=0.1, scaled=False):
    """Leading term of ``pi_n(x)`` for ``0 < |x - x_nu| < delta``.

    With ``t = n (arccos x_nu - arccos x)`` (negative left of ``x_nu``) the
    bracket is ``cos(xi) G_a(t) + sin(xi) t G_{a+1}(t)``, ``a = (lambda-1)/2``,
    ``G_a(t) = t**-a J_a(t)``. For ``t > 0`` this is the Bessel form
    ``t**-a [cos(xi) J_a(t) + sin(xi) J_{a+1}(t)]``; for ``t < 0`` it is its
    continuation through the singularity.
    """
    s = ctx.singularity(nu)
    x = _interior(x)
    dist = np.abs(x - s.position)
    if np.any(dist == 0.0):
        raise AsymptoticDomainError("x equals the singular point; the expansion needs a side")
    if np.any(dist >= delta):
        raise AsymptoticDomainError(f"|x - x_nu| must be below delta={delta}")
    lam = s.exponent
    a = 0.5 * (lam - 1.0)
    theta = np.arccos(x)
    t = n * (s.angle - theta)
    xi = psi_nu(ctx, nu, x) - 0.25 * math.pi * lam - 0.25 * math.pi + _n_theta(s, n) + 0.5 * theta
    bracket = np.cos(xi) * bessel_j_entire(a, t) + np.sin(xi) * t * bessel_j_entire(a + 1.0, t)
    # |t|^{lambda/2} / sqrt(w) written without the 0/0 at x_nu
    ratio = np.power(np.abs(t) / dist, 0.5 * lam) / np.sqrt(ctx.measure.weight_without(nu, x))
    out = _prefactor(ctx, n, x, scaled) * math.sqrt(math.pi) * ratio * bracket
    return float(out) if np.ndim(out) == 0 else out


def asym_pn_endpoint(ctx, n, x, delta=0.1, scaled=False):
    """Leading term of ``pi_n(x)`` for ``x`` in ``(1 - delta, 1)``."""
    x = np.asarray(x, dtype=float)
    last = ctx.positions()[-2]
    if np.any(x <= 1.0 - delta) or np.any(x >= 1.0) or 1.0 - delta <= last:
        raise AsymptoticDomainError(f"x must lie in (1 - delta, 1) = ({1.0 - delta}, 1) clear of singularities")
    m = ctx.measure
    theta = np.arccos(x)
    s = n * theta
    phase = 0.5 * theta + psi_nu(ctx, m.n0, x) + 0.5 * m.alpha * math.pi
    bracket = np.cos(phase) * bessel_j(m.alpha, s) + np.sin(phase) * bessel_j_prime(m.alpha, s)
    out = _prefactor(ctx, n, x, scaled) * np.sqrt(math.pi * s / m.weight(x)) * bracket
    return float(out) if out.ndim == 0 else out
