r"""Generalized Jacobi measures and their three-term recurrences.

The measure is

.. math::
    d\mu(x) = h(x) (1-x)^\alpha (1+x)^\beta \prod_\nu |x - x_\nu|^{\lambda_\nu} dx

on :math:`[-1, 1]`. Recurrence coefficients come from the discretised
Stieltjes procedure applied to a composite Gauss-Jacobi rule: the interval
is split at the singular points and each piece gets a Jacobi rule whose
endpoint exponents absorb the two adjacent singular factors exactly.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.linalg import eigvalsh_tridiagonal

__all__ = [
    "SingularPoint",
    "AnalyticFactor",
    "GeneralizedJacobiMeasure",
    "QuadratureRule",
    "RecurrenceTable",
    "NonConvergenceError",
    "jacobi_recurrence",
    "gauss_jacobi",
    "build_composite_rule",
    "stieltjes",
    "stieltjes_recurrence",
    "MAX_N",
]

MAX_N = 20000


class NonConvergenceError(RuntimeError):
    pass


def _exact_cos_pi(p, q):
    # cos(pi p/q) is rational only at 0, +-1/2, +-1; return those exactly
    x = math.cos(math.pi * p / q)
    for v in (0.0, 0.5, -0.5, 1.0, -1.0):
        if abs(x - v) < 1e-15:
            return v
    return x


@dataclass(frozen=True)
class SingularPoint:
    """Interior algebraic singularity ``|x - position|**exponent``."""

    position: float
    exponent: float
    angle_rational: Optional[tuple] = None

    def __post_init__(self):
        if self.angle_rational is not None:
            p, q = (int(v) for v in self.angle_rational)
            if not (0 < p < q) or math.gcd(p, q) != 1:
                raise ValueError(f"angle p/q must satisfy 0 < p < q, gcd = 1; got {p}/{q}")
            pos = _exact_cos_pi(p, q)
            if self.position is not None and not math.isnan(self.position) and self.position != pos:
                raise ValueError("position disagrees with cos(pi p/q)")
            object.__setattr__(self, "angle_rational", (p, q))
            object.__setattr__(self, "position", pos)
        if not -1.0 < float(self.position) < 1.0:
            raise ValueError(f"singularity must lie in (-1, 1), got {self.position}")
        if not float(self.exponent) > -1.0:
            raise ValueError(f"exponent must exceed -1, got {self.exponent}")
        object.__setattr__(self, "position", float(self.position))
        object.__setattr__(self, "exponent", float(self.exponent))

    @classmethod
    def from_angle(cls, p, q, exponent):
        """Singularity at ``cos(pi p / q)``."""
        return cls(float("nan"), exponent, (p, q))

    @property
    def angle(self):
        """``arccos(position)``."""
        if self.angle_rational is not None:
            p, q = self.angle_rational
            return math.pi * p / q
        return math.acos(self.position)


@dataclass(frozen=True)
class AnalyticFactor:
    """Positive factor ``h`` on ``[-1, 1]``.

    ``log_chebyshev`` optionally holds the Chebyshev coefficients of
    ``log h``; when present it must agree with ``evaluator``.
    """

    evaluator: Callable
    log_chebyshev: Optional[tuple] = None
    name: str = "custom"
    even: bool = False

    def __post_init__(self):
        if self.log_chebyshev is not None:
            coeffs = tuple(float(v) for v in self.log_chebyshev)
            object.__setattr__(self, "log_chebyshev", coeffs)
            grid = np.cos(np.pi * (np.arange(64) + 0.5) / 64)
            ref = np.exp(C.chebval(grid, coeffs))
            got = np.asarray(self.evaluator(grid), dtype=float)
            if np.max(np.abs(got - ref) / ref) > 1e-10:
                raise ValueError("log_chebyshev does not reproduce the evaluator")

    def __call__(self, x):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=float)

    @classmethod
    def one(cls):
        return cls(lambda x: np.ones_like(x), (0.0,), "one", True)

    @classmethod
    def exp(cls):
        return cls(np.exp, (0.0, 1.0), "exp", False)

    @classmethod
    def from_log_chebyshev(cls, coeffs):
        coeffs = tuple(float(v) for v in coeffs)
        even = all(v == 0.0 for v in coeffs[1::2])
        return cls(lambda x: np.exp(C.chebval(x, coeffs)), coeffs, "chebyshev", even)


@dataclass(frozen=True)
class GeneralizedJacobiMeasure:
    alpha: float = 0.0
    beta: float = 0.0
    singularities: Sequence[SingularPoint] = ()
    h: AnalyticFactor = field(default_factory=AnalyticFactor.one)

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValueError("alpha and beta must exceed -1")
        sings = tuple(self.singularities)
        pos = [s.position for s in sings]
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("singularities must be strictly increasing")
        object.__setattr__(self, "singularities", sings)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.h.log_chebyshev is None:
            test = self.h(np.linspace(-1.0, 1.0, 65))
            if not np.all(test > 0):
                raise ValueError("h must be strictly positive on [-1, 1]")

    @property
    def n0(self):
        return len(self.singularities)

    @property
    def total_exponent(self):
        return self.alpha + self.beta + sum(s.exponent for s in self.singularities)

    @property
    def is_even(self):
        if self.alpha != self.beta or not self.h.even:
            return False
        pos = [s.position for s in self.singularities]
        lam = [s.exponent for s in self.singularities]
        return pos == [-p for p in reversed(pos)] and lam == lam[::-1]

    def breakpoints(self):
        return [-1.0] + [s.position for s in self.singularities] + [1.0]

    def weight(self, x):
        """Full density ``w(x)``."""
        x = np.asarray(x, dtype=float)
        out = self.h(x) * np.power(1.0 - x, self.alpha) * np.power(1.0 + x, self.beta)
        for s in self.singularities:
            out = out * np.power(np.abs(x - s.position), s.exponent)
        return out

    def weight_without(self, nu, x):
        """Density with the factor of singularity ``nu`` (1-based) removed."""
        x = np.asarray(x, dtype=float)
        out = self.h(x) * np.power(1.0 - x, self.alpha) * np.power(1.0 + x, self.beta)
        for i, s in enumerate(self.singularities, start=1):
            if i != nu:
                out = out * np.power(np.abs(x - s.position), s.exponent)
        return out


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    degree: int = 0

    def integrate(self, values):
        return float(np.dot(self.weights, values))


@dataclass(frozen=True)
class RecurrenceTable:
    """Monic recurrence ``pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1}``.

    ``diag`` holds a_0..a_{N-1}, ``offdiag_sq`` holds b_1..b_{N-1}, ``mass``
    is b_0.
    """

    diag: np.ndarray
    offdiag_sq: np.ndarray
    mass: float
    quad_degree: int = 0
    change: float = 0.0
    rule: Optional[QuadratureRule] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.offdiag_sq.size != max(self.diag.size - 1, 0):
            raise ValueError("offdiag_sq must have one entry fewer than diag")
        if np.any(self.offdiag_sq <= 0):
            raise ValueError("recurrence coefficients b_k must be positive")

    @property
    def N(self):
        return int(self.diag.size)

    def truncated(self, n):
        return RecurrenceTable(self.diag[:n], self.offdiag_sq[: max(n - 1, 0)], self.mass,
                               self.quad_degree, self.change, self.rule)


def jacobi_recurrence(n, alpha, beta):
    """Monic Jacobi recurrence for ``(1-t)^alpha (1+t)^beta`` on ``[-1, 1]``.

    Returns ``(a[0:n], b[0:n])`` with ``b[0]`` the total mass.
    """
    ab = alpha + beta
    k = np.arange(n, dtype=float)
    a = np.empty(n)
    b = np.empty(n)
    a[0] = (beta - alpha) / (ab + 2.0)
    if n > 1:
        s = 2.0 * k[1:] + ab
        a[1:] = (beta * beta - alpha * alpha) / (s * (s + 2.0))
    b[0] = math.exp((ab + 1.0) * math.log(2.0) + math.lgamma(alpha + 1.0) + math.lgamma(beta + 1.0)
                    - math.lgamma(ab + 2.0))
    if n > 1:
        b[1] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) ** 2 * (3.0 + ab))
    if n > 2:
        kk = k[2:]
        s = 2.0 * kk + ab
        b[2:] = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0))
    return a, b


def _christoffel_weights(a, b, nodes):
    """Gauss weights ``1 / sum_k p_k(x_i)^2`` with orthonormal ``p_k``."""
    m = nodes.size
    p_prev = np.zeros(m)
    p = np.full(m, 1.0 / math.sqrt(b[0]))
    acc = p * p
    for k in range(m - 1):
        p_next = ((nodes - a[k]) * p - math.sqrt(b[k]) * p_prev if k else (nodes - a[k]) * p)
        p_next /= math.sqrt(b[k + 1])
        p_prev, p = p, p_next
        acc += p * p
    return 1.0 / acc


def _newton_polish(a, b, x):
    # one Newton step on the monic recurrence, renormalised every step
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    d_prev = np.zeros_like(x)
    d = np.zeros_like(x)
    for k in range(x.size):
        p_new = (x - a[k]) * p - (b[k] * p_prev if k else 0.0)
        d_new = p + (x - a[k]) * d - (b[k] * d_prev if k else 0.0)
        s = np.hypot(p_new, p)
        p_prev, p, d_prev, d = p / s, p_new / s, d / s, d_new / s
    with np.errstate(divide="ignore", invalid="ignore"):
        step = p / d
    ok = np.isfinite(step) & (np.abs(step) < 1e-10)
    return np.where(ok, x - step, x)


def gauss_jacobi(m, alpha, beta):
    """``m``-point Gauss-Jacobi nodes and weights on ``[-1, 1]``."""
    a, b = jacobi_recurrence(m, alpha, beta)
    if m == 1:
        return a.copy(), b[:1].copy()
    nodes = _newton_polish(a, b, eigvalsh_tridiagonal(a, np.sqrt(b[1:])))
    return nodes, _christoffel_weights(a, b, nodes)


def build_composite_rule(measure, degree):
    """Composite rule with ``degree + 1`` Gauss-Jacobi nodes per subinterval."""
    degree = int(degree)
    if degree < 1:
        raise ValueError("degree must be >= 1")
    m = degree + 1
    pts = measure.breakpoints()
    exps = [measure.beta] + [s.exponent for s in measure.singularities] + [measure.alpha]
    nodes, weights = [], []
    for i in range(len(pts) - 1):
        lo, hi = pts[i], pts[i + 1]
        e_lo, e_hi = exps[i], exps[i + 1]
        t, wt = gauss_jacobi(m, e_hi, e_lo)
        if not (np.all(np.isfinite(t)) and np.all(wt > 0)):
            raise NonConvergenceError(f"Gauss-Jacobi rule failed on [{lo}, {hi}]")
        half = 0.5 * (hi - lo)
        x = lo + half * (1.0 + t)
        smooth = measure.h(x)
        if i != 0:
            smooth = smooth * np.power(1.0 + x, measure.beta)
        if i != len(pts) - 2:
            smooth = smooth * np.power(1.0 - x, measure.alpha)
        for j, s in enumerate(measure.singularities, start=1):
            if j not in (i, i + 1):
                smooth = smooth * np.power(np.abs(x - s.position), s.exponent)
        nodes.append(x)
        weights.append(wt * smooth * half ** (e_lo + e_hi + 1.0))
    x = np.concatenate(nodes)
    w = np.concatenate(weights)
    order = np.argsort(x, kind="stable")
    return QuadratureRule(x[order], w[order], degree)


def stieltjes(rule, n):
    """Discretised Stieltjes procedure (orthonormal form) on ``rule``."""
    x, w = rule.nodes, rule.weights
    mass = float(w.sum())
    a = np.empty(n)
    b = np.empty(max(n - 1, 0))
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(mass))
    sqrt_b = 0.0
    for k in range(n):
        wp2 = w * p * p
        a[k] = float(np.dot(wp2, x))
        if k == n - 1:
            break
        r = (x - a[k]) * p - sqrt_b * p_prev
        bk = float(np.dot(w, r * r))
        if not bk > 0:
            raise NonConvergenceError(f"Stieltjes breakdown at k={k + 1}")
        b[k] = bk
        sqrt_b = math.sqrt(bk)
        p_prev, p = p, r / sqrt_b
    return a, b, mass


def stieltjes_recurrence(measure, N, tol=1e-11, max_factor=64):
    """Recurrence table to size ``N`` with quadrature refinement.

    The composite rule starts at degree ``2N`` and doubles until two
    consecutive tables agree to ``tol`` (mass compared relatively).
    """
    N = int(N)
    if not 1 <= N <= MAX_N:
        raise ValueError(f"N must be in [1, {MAX_N}]")
    degree = 2 * N
    rule = build_composite_rule(measure, degree)
    prev = stieltjes(rule, N)
    while True:
        degree *= 2
        if degree > max_factor * N:
            raise NonConvergenceError(f"no agreement to {tol} by degree {degree // 2}")
        rule = build_composite_rule(measure, degree)
        cur = stieltjes(rule, N)
        change = max(
            float(np.max(np.abs(cur[0] - prev[0]), initial=0.0)),
            float(np.max(np.abs(cur[1] - prev[1]), initial=0.0)),
            abs(cur[2] - prev[2]) / cur[2],
        )
        if change <= tol:
            if measure.is_even:
                # exact by symmetry; the computed values are rounding noise
                cur = (np.zeros_like(cur[0]), cur[1], cur[2])
            return RecurrenceTable(cur[0], cur[1], cur[2], degree, change, rule)
        prev = cur
