r"""Zeros of the Bessel combination :math:`c\,x^{-a}J_a(x) + d\,x^{-a}J_{a+1}(x)`.

The function is evaluated in entire form
``F(x) = c G_a(x) + d x G_{a+1}(x)`` so that negative arguments make sense.
Zeros are indexed ``... < j_{-1} <= 0 < j_1 < j_2 < ...`` with ``j_0 = 0``
kept as a bookkeeping constant.
"""

import math
import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .normal_form import potential_coeffs
from .specfun import bessel_j_entire, bessel_j_entire_pair

__all__ = [
    "ComboSpec",
    "ZeroSearchError",
    "PoleError",
    "SecondDifferences",
    "psi_eval",
    "combo_zero",
    "combo_zeros_range",
    "indexed_zero",
    "sigma",
    "second_difference",
    "normal_form_potential",
]

SMALL_X = 5.0
SMALL_STEP = 0.01
LARGE_STEP = math.pi / 16


class ZeroSearchError(RuntimeError):
    """The scan could not isolate the requested sign change."""


class PoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class ComboSpec:
    """Parameters of ``c J_a + d J_{a+1}``, stored with ``c^2 + d^2 = 1``.

    The first nonzero of ``(c, d)`` is made non-negative; the zero set does not
    change under rescaling.
    """

    a: float
    c: float
    d: float

    def __post_init__(self):
        a, c, d = float(self.a), float(self.c), float(self.d)
        if not a > -1.0:
            raise ValueError(f"order must exceed -1, got {a}")
        norm = math.hypot(c, d)
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("(c, d) must be finite and not both zero")
        c, d = c / norm, d / norm
        if c < 0.0 or (c == 0.0 and d < 0.0):
            c, d = -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c + 0.0)
        object.__setattr__(self, "d", d + 0.0)

    def reflected(self):
        """Spec whose positive zeros are the negated negative zeros of ``self``."""
        return ComboSpec(self.a, self.c, -self.d)

    @property
    def origin_is_root(self):
        return self.c == 0.0


def psi_eval(spec, x):
    """Entire-form value ``c G_a(x) + d x G_{a+1}(x)``."""
    x_arr = np.asarray(x, dtype=float)
    if spec.d == 0.0:
        out = spec.c * bessel_j_entire(spec.a, x_arr)
    else:
        g0, g1 = bessel_j_entire_pair(spec.a, x_arr)
        out = spec.c * g0 + spec.d * x_arr * g1
    if np.ndim(out) == 0:
        return float(out)
    return out


def _scan_grid(start, stop):
    pts = []
    if start < SMALL_X:
        pts.append(np.arange(start, min(stop, SMALL_X), SMALL_STEP))
    lo = max(start, SMALL_X)
    if stop > lo:
        n = int(math.ceil((stop - lo) / LARGE_STEP))
        pts.append(lo + LARGE_STEP * np.arange(n + 1))
    return np.concatenate(pts)


def _bisect(spec, lo, hi):
    """Shrink sign-change brackets ``[lo, hi]`` to adjacent floats.

    Illinois steps (regula falsi with the stale end's value halved) do the
    bulk of the work; a bisection step is forced when three steps fail to
    halve a bracket. The last few ulps are always bisected, so the result
    does not depend on the starting bracket.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    f_lo = psi_eval(spec, lo)
    f_hi = psi_eval(spec, hi)
    side = np.zeros(lo.size, dtype=np.int8)  # which end moved last: -1 lo, +1 hi
    ref_width = hi - lo
    for it in range(400):
        width = hi - lo
        ulp = np.spacing(np.maximum(np.abs(lo), np.abs(hi)))
        mid = 0.5 * (lo + hi)
        active = (mid > lo) & (mid < hi)
        if not active.any():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            x = hi - f_hi * width / (f_hi - f_lo)
        slow = np.zeros(lo.size, dtype=bool)
        if it % 3 == 2:
            slow = width > 0.5 * ref_width
            ref_width = width
        plain = ~np.isfinite(x) | (x <= lo) | (x >= hi) | slow | (width <= 64.0 * ulp)
        x = np.where(plain, mid, x)
        x = np.where(active, x, lo)
        f_x = psi_eval(spec, x)
        same_lo = np.signbit(f_x) == np.signbit(f_lo)
        move_lo = active & same_lo
        move_hi = active & ~same_lo
        # Illinois: the end that stays put twice in a row has its value halved
        f_hi = np.where(move_lo & (side == -1) & ~plain, 0.5 * f_hi, f_hi)
        f_lo = np.where(move_hi & (side == 1) & ~plain, 0.5 * f_lo, f_lo)
        lo, f_lo = np.where(move_lo, x, lo), np.where(move_lo, f_x, f_lo)
        hi, f_hi = np.where(move_hi, x, hi), np.where(move_hi, f_x, f_hi)
        side = np.where(move_lo, -1, np.where(move_hi, 1, side)).astype(np.int8)
    else:
        raise ZeroSearchError("bracket refinement did not terminate")
    # halved values are not function values; re-evaluate before choosing
    f_lo = np.abs(psi_eval(spec, lo))
    f_hi = np.abs(psi_eval(spec, hi))
    return np.where(f_hi < f_lo, hi, lo)


def _positive_zeros(spec, k_max):
    # sign just to the right of the origin
    s0 = spec.c if spec.c != 0.0 else spec.d
    found = []
    start = 0.0
    prev_pos = s0 > 0
    limit = (k_max + 0.5 * abs(spec.a) + 10.0) * math.pi * 2.0 + 20.0
    while len(found) < k_max:
        need = k_max - len(found)
        stop = start + max(8.0, (need + 2) * math.pi * 1.1)
        grid = _scan_grid(start, stop)
        vals = psi_eval(spec, grid)
        pos = vals > 0
        if start == 0.0:
            pos[0] = prev_pos
        else:
            grid = np.concatenate([[start], grid])
            pos = np.concatenate([[prev_pos], pos])
        flips = np.nonzero(pos[1:] != pos[:-1])[0]
        if flips.size:
            roots = _bisect(spec, grid[flips], grid[flips + 1])
            found.extend(roots.tolist())
        prev_pos = bool(pos[-1])
        start = float(grid[-1])
        if start > limit and len(found) < k_max:
            raise ZeroSearchError(f"only {len(found)} of {k_max} zeros located below x={start:.1f}")
    out = np.asarray(found[:k_max])
    if np.any(np.diff(out) <= 0):
        raise ZeroSearchError("zeros are not strictly increasing")
    return out


_cache = {}
_cache_lock = threading.Lock()


def combo_zeros_range(spec, k_max):
    """Positive zeros ``j_1 .. j_{k_max}`` as an increasing array."""
    k_max = int(k_max)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    key = (spec.a, spec.c, spec.d)
    with _cache_lock:
        have = _cache.get(key)
    if have is None or have.size < k_max:
        size = k_max if have is None else max(k_max, 2 * have.size)
        have = _positive_zeros(spec, size)
        have.setflags(write=False)
        with _cache_lock:
            _cache[key] = have
    return have[:k_max].copy()


def combo_zero(spec, k):
    """The ``k``-th zero ``j_k(a, c, d)`` for ``k != 0``."""
    k = int(k)
    if k == 0:
        raise ValueError("j_0 is the bookkeeping constant 0, not a computed zero")
    if k > 0:
        return float(combo_zeros_range(spec, k)[-1])
    if spec.origin_is_root:
        if k == -1:
            return 0.0
        return -float(combo_zeros_range(spec.reflected(), -k - 1)[-1])
    return -float(combo_zeros_range(spec.reflected(), -k)[-1])


def indexed_zero(spec, k):
    """``j_k`` with the convention ``j_0 = 0``."""
    return 0.0 if int(k) == 0 else combo_zero(spec, k)


def sigma(spec):
    """``(2a+1) c d / (c^2 + d^2)``."""
    return (2.0 * spec.a + 1.0) * spec.c * spec.d / (spec.c**2 + spec.d**2)


class SecondDifferences(NamedTuple):
    reciprocal: float  # 1/j_{k+2} + 1/j_k - 2/j_{k+1}
    linear: float  # j_{k+2} - 2 j_{k+1} + j_k


def second_difference(jk, jk1, jk2):
    if not 0.0 < jk < jk1 < jk2:
        raise ValueError("need 0 < j_k < j_{k+1} < j_{k+2}")
    return SecondDifferences(1.0 / jk2 + 1.0 / jk - 2.0 / jk1, jk2 - 2.0 * jk1 + jk)


def normal_form_potential(spec, x):
    """Potential ``C(x)`` of the normal form ``z'' + C z = 0``."""
    a0, a1, a2, a3, a4 = potential_coeffs(spec.a, spec.c, spec.d)
    x = np.asarray(x, dtype=float)
    s = spec.c**2 + spec.d**2
    p = (2.0 * spec.a + 1.0) * spec.c * spec.d
    den = 4.0 * x**2 * (s * x + p) ** 2
    if np.any(den == 0.0):
        raise PoleError("C(x) has a pole at the requested point")
    out = ((((a0 * x + a1) * x + a2) * x + a3) * x + a4) / den
    return float(out) if out.ndim == 0 else out
