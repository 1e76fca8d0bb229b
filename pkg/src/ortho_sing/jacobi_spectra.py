"""Zeros of orthogonal polynomials as Jacobi-matrix eigenvalues.

Eigenvalues are isolated by Sturm-count bisection, vectorised over the
shifts, and finished with one guarded Newton step on the recurrence. The
windowed mode bisects only the ranks adjacent to a target point.
"""

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

__all__ = [
    "JacobiMatrix",
    "CenteredZeroSet",
    "ScaledZeroFrame",
    "sturm_count",
    "eigenvalues_by_rank",
    "all_zeros",
    "zeros_near",
    "scale_zeros",
    "orthonormal_eval",
    "monic_eval_scaled",
]

BISECT_TOL = 1e-14
SNAP_TOL = 1e-14
_PIVMIN = 1e-290


@dataclass(frozen=True)
class JacobiMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if self.offdiag.size != self.diag.size - 1:
            raise ValueError("offdiag must have n - 1 entries")
        if np.any(self.offdiag <= 0):
            raise ValueError("off-diagonal entries must be positive")

    @property
    def n(self):
        return int(self.diag.size)

    @classmethod
    def from_recurrence(cls, rec, n):
        n = int(n)
        if not 1 <= n <= rec.N:
            raise ValueError(f"n must be in [1, {rec.N}], got {n}")
        return cls(np.asarray(rec.diag[:n], dtype=float), np.sqrt(rec.offdiag_sq[: n - 1]))

    def gershgorin(self):
        e = np.concatenate([[0.0], self.offdiag, [0.0]])
        rad = e[:-1] + e[1:]
        return float(np.min(self.diag - rad)), float(np.max(self.diag + rad))


def sturm_count(jm, t):
    """Number of eigenvalues strictly below each shift in ``t``."""
    t = np.asarray(t, dtype=float)
    e2 = jm.offdiag * jm.offdiag
    d = jm.diag
    q = d[0] - t
    q = np.where(np.abs(q) < _PIVMIN, -_PIVMIN, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, jm.n):
        q = (d[i] - t) - e2[i - 1] / q
        q = np.where(np.abs(q) < _PIVMIN, -_PIVMIN, q)
        count += q < 0
    return count


def _orthonormal_with_derivative(jm, x):
    # p_n up to a positive constant and its derivative, by the recurrence
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dp = np.zeros_like(x)
    for k in range(jm.n):
        bk = jm.offdiag[k - 1] if k else 0.0
        nxt = jm.offdiag[k] if k < jm.n - 1 else 1.0
        p_new = ((x - jm.diag[k]) * p - bk * p_prev) / nxt
        dp_new = (p + (x - jm.diag[k]) * dp - bk * dp_prev) / nxt
        p_prev, p = p, p_new
        dp_prev, dp = dp, dp_new
        scale = np.maximum(np.abs(p), 1.0)
        big = scale > 1e200
        if big.any():
            s = np.where(big, 1e-200, 1.0)
            p, p_prev, dp, dp_prev = p * s, p_prev * s, dp * s, dp_prev * s
    return p, dp


def eigenvalues_by_rank(jm, ranks, lo=None, hi=None):
    """Eigenvalues with the given 0-based ranks (ascending order of ranks)."""
    ranks = np.asarray(ranks, dtype=np.int64)
    g_lo, g_hi = jm.gershgorin()
    lo = np.full(ranks.shape, g_lo if lo is None else lo, dtype=float)
    hi = np.full(ranks.shape, g_hi if hi is None else hi, dtype=float)
    # invariant: count(lo) <= rank < count(hi)
    for _ in range(200):
        width = hi - lo
        active = width > BISECT_TOL
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        c = sturm_count(jm, mid)
        upper = c > ranks
        hi = np.where(active & upper, mid, hi)
        lo = np.where(active & ~upper, mid, lo)
    x = 0.5 * (lo + hi)
    p, dp = _orthonormal_with_derivative(jm, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        newton = x - p / dp
    ok = np.isfinite(newton) & (newton >= lo) & (newton <= hi)
    return np.where(ok, newton, x)


def all_zeros(rec, n):
    """All ``n`` zeros of ``p_n`` in increasing order."""
    jm = JacobiMatrix.from_recurrence(rec, n)
    return eigenvalues_by_rank(jm, np.arange(jm.n))


@dataclass(frozen=True)
class CenteredZeroSet:
    """Zeros indexed around ``center``: ``x_{-1} <= center < x_1``."""

    center: float
    n: int
    zeros: Dict[int, float]

    def __post_init__(self):
        keys = sorted(self.zeros)
        if 0 in keys:
            raise ValueError("index 0 is reserved for the center")
        vals = [self.zeros[k] for k in keys]
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("zeros must increase with k")
        for k in keys:
            if (k > 0 and not self.zeros[k] > self.center) or (k < 0 and not self.zeros[k] <= self.center):
                raise ValueError(f"zero {k} is on the wrong side of the center")

    def value(self, k):
        """``x_{k,n}``, with ``x_{0,n} = center``."""
        return self.center if k == 0 else self.zeros[k]

    def gap(self, k):
        return self.value(k + 1) - self.value(k)


@dataclass(frozen=True)
class ScaledZeroFrame:
    n: int
    center: float
    scaled: Dict[int, float]

    def value(self, k):
        return 0.0 if k == 0 else self.scaled[k]

    def gap(self, k):
        return self.value(k + 1) - self.value(k)


def zeros_near(rec, n, x0, count):
    """Up to ``count`` zeros of ``p_n`` on each side of ``x0``.

    Only the eigenvalue ranks adjacent to ``x0`` are bisected.
    """
    x0 = float(x0)
    count = int(count)
    if not -1.0 < x0 < 1.0:
        raise ValueError("x0 must lie in (-1, 1)")
    if not 1 <= count <= n:
        raise ValueError("need 1 <= count <= n")
    jm = JacobiMatrix.from_recurrence(rec, n)
    below = int(sturm_count(jm, np.array([x0]))[0])
    # one spare rank on each side covers a zero sitting on x0
    r_lo = max(below - count - 1, 0)
    r_hi = min(below + count, jm.n - 1)
    ranks = np.arange(r_lo, r_hi + 1)
    vals = eigenvalues_by_rank(jm, ranks)
    vals = np.where(np.abs(vals - x0) < SNAP_TOL, x0, vals)
    left = np.sort(vals[vals <= x0])[::-1][:count]
    right = np.sort(vals[vals > x0])[:count]
    zeros = {-(i + 1): float(v) for i, v in enumerate(left)}
    zeros.update({i + 1: float(v) for i, v in enumerate(right)})
    return CenteredZeroSet(x0, int(n), zeros)


def scale_zeros(zs):
    """``a_{k,n} = n (x_{k,n} - x0) / sqrt(1 - x0^2)``."""
    f = zs.n / math.sqrt(1.0 - zs.center * zs.center)
    return ScaledZeroFrame(zs.n, zs.center, {k: f * (v - zs.center) for k, v in zs.zeros.items()})


def orthonormal_eval(rec, n, x):
    """Orthonormal ``p_n(x)`` with positive leading coefficient."""
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(rec.mass))
    for k in range(n):
        bk = math.sqrt(rec.offdiag_sq[k - 1]) if k else 0.0
        p_new = ((x - rec.diag[k]) * p - bk * p_prev) / math.sqrt(rec.offdiag_sq[k])
        p_prev, p = p, p_new
    return float(p) if p.ndim == 0 else p


def monic_eval_scaled(rec, n, x):
    """``2^n pi_n(x)`` for the monic ``pi_n``.

    Scaling by ``2^n`` keeps the value O(1) on ``[-1, 1]`` where ``pi_n``
    itself underflows for large ``n``.
    """
    x = np.asarray(x, dtype=float)
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    for k in range(n):
        bk = rec.offdiag_sq[k - 1] if k else 0.0
        q_new = 2.0 * (x - rec.diag[k]) * q - 4.0 * bk * q_prev
        q_prev, q = q, q_new
    return float(q) if q.ndim == 0 else q
