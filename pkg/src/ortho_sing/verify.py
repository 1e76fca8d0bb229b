"""Verification suites for local zero spacing and Bessel-combination zeros.

* :func:`spacing_experiment` compares scaled zero gaps of ``p_n`` at a
  singular point with the limiting Bessel-combination gaps, one report per
  residue class of ``n``.
* :func:`convexity_suite` and :func:`comparison_suite` check the
  second-difference and gap inequalities for ``j_k(a, c, d)``.
* :func:`gap_limit_suite` tracks ``j_{k+1} - j_k -> pi``.
* :func:`simplicity_check` confirms every located zero is a simple root.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .asymptotics import PhaseContext, combo_spec, phase_phi_nu, predicted_spacing
from .bessel_zeros import ComboSpec, combo_zeros_range, psi_eval, sigma
from .jacobi_spectra import scale_zeros, zeros_near
from .measure import stieltjes_recurrence

__all__ = [
    "HypothesisError",
    "SpacingRow",
    "SpacingReport",
    "InequalityReport",
    "GapLimitRow",
    "SimplicityReport",
    "spacing_experiment",
    "target_subsequence",
    "convexity_suite",
    "comparison_suite",
    "gap_limit_suite",
    "simplicity_check",
    "sample_case_grid",
    "CONVEXITY_CASES",
    "COMPARISON_CASES",
]

SLACK = 1e-10
NOISE_ALLOWANCE = 1.2


class HypothesisError(ValueError):
    """A grid point does not satisfy the hypotheses of its case."""


def parallel_map(fn, items, threads=1):
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- spacing


class SpacingRow(NamedTuple):
    n: int
    zero_k: float
    zero_k1: float
    scaled_k: float
    scaled_k1: float
    measured: float
    predicted: float
    abs_error: float


@dataclass
class SpacingReport:
    measure_id: str
    nu: int
    k: int
    residue: int
    modulus: int
    rows: List[SpacingRow]
    tol: float
    verdict: str = ""
    decay_exponent: Optional[float] = None

    def __post_init__(self):
        self.verdict = "converging" if self.converging() else "failed"
        self.decay_exponent = self._fit_decay()

    def rel_errors(self):
        return [r.abs_error / abs(r.predicted) for r in self.rows]

    def converging(self):
        errs = self.rel_errors()
        if not errs or not errs[-1] < self.tol:
            return False
        tail = errs[-3:]
        return all(b <= NOISE_ALLOWANCE * a for a, b in zip(tail, tail[1:]))

    def _fit_decay(self):
        pts = [(r.n, r.abs_error) for r in self.rows if r.abs_error > 0]
        if len(pts) < 2:
            return None
        ns, es = zip(*pts)
        slope = np.polyfit(np.log(ns), np.log(es), 1)[0]
        return float(slope)


def spacing_experiment(measure, nu, k, n_list, rec=None, tol=0.02, measure_id="", threads=1):
    """Scaled gap ``a_{k+1,n} - a_{k,n}`` at singularity ``nu`` against its limit.

    ``n`` values are grouped by residue modulo ``q`` when the singular
    angle is ``pi p / q`` and into a single class otherwise; the
    limiting constants are identical within a class up to a sign, which
    leaves the zeros unchanged.
    ``tol`` is relative to the predicted gap.
    """
    k = int(k)
    n_list = sorted(int(n) for n in n_list)
    if not n_list:
        raise ValueError("n_list is empty")
    ctx = PhaseContext.from_measure(measure)
    sp = ctx.singularity(nu)
    if rec is None:
        rec = stieltjes_recurrence(measure, n_list[-1])
    count = max(abs(k), abs(k + 1)) + 1

    def one(n):
        zs = zeros_near(rec, n, sp.position, count)
        sc = scale_zeros(zs)
        pred = predicted_spacing(ctx, nu, n, k)
        meas = sc.gap(k)
        return SpacingRow(n, zs.value(k), zs.value(k + 1), sc.value(k), sc.value(k + 1),
                          meas, pred, abs(meas - pred))

    rows = parallel_map(one, n_list, threads)
    modulus = sp.angle_rational[1] if sp.angle_rational else 1
    reports = []
    for m in sorted({n % modulus for n in n_list}):
        cls_rows = [r for r in rows if r.n % modulus == m]
        reports.append(SpacingReport(measure_id, nu, k, m, modulus, cls_rows, tol))
    return reports


def target_subsequence(measure, nu, c, d, n_max):
    """Indices ``n`` approaching the constants ``+-(c, d)``.

    Returns ``(n, distance)`` pairs where the distance of
    ``(cos, sin)(n arccos x_nu + phi_nu)`` to the nearer of ``+-(c, d)``
    sets a new record, so the distances strictly decrease.
    """
    norm = math.hypot(c, d)
    if norm == 0:
        raise ValueError("(c, d) must not vanish")
    c, d = c / norm, d / norm
    ctx = PhaseContext.from_measure(measure)
    sp = ctx.singularity(nu)
    phi = phase_phi_nu(ctx, nu)
    n = np.arange(1, int(n_max) + 1)
    xi = np.fmod(n * sp.angle, 2 * math.pi) + phi
    cs, sn = np.cos(xi), np.sin(xi)
    dist = np.minimum(np.hypot(cs - c, sn - d), np.hypot(cs + c, sn + d))
    out = []
    best = math.inf
    for i in range(n.size):
        if dist[i] < best:
            best = float(dist[i])
            out.append((int(n[i]), best))
    return out


# ---------------------------------------------------------- inequalities


def _same_sign(spec):
    return spec.c * spec.d > 0


def _opposite_sign(spec):
    return spec.c * spec.d < 0


def _d_dominates(spec):
    return spec.d * spec.d >= spec.c * spec.c


CONVEXITY_CASES = {
    "i": (lambda s: s.a >= 0.5 and _same_sign(s), "a >= 1/2, cd > 0"),
    "ii": (lambda s: 0.0 < s.a < 0.5 and _same_sign(s), "0 < a < 1/2, cd > 0"),
    "iii": (lambda s: -0.5 < s.a <= 0.0 and _same_sign(s), "-1/2 < a <= 0, cd > 0"),
    "iv": (lambda s: -1.0 < s.a < -0.5 and _d_dominates(s) and _opposite_sign(s),
           "-1 < a < -1/2, d^2 >= c^2, cd < 0"),
}

COMPARISON_CASES = {
    "i": (lambda s: s.a >= 0.5 and _same_sign(s), "a >= 1/2, cd > 0"),
    "ii": (lambda s: s.a >= 0.0 and _d_dominates(s) and _same_sign(s), "a >= 0, d^2 >= c^2, cd > 0"),
    "iii": (lambda s: -1.0 < s.a < -0.5 and _d_dominates(s) and _opposite_sign(s),
            "-1 < a < -1/2, d^2 >= c^2, cd < 0"),
}


@dataclass
class InequalityReport:
    """One grid point of an inequality suite.

    ``rows`` holds ``(k, lhs, rhs)`` for the claim ``lhs < rhs``; claims of
    the form ``lhs > rhs`` are stored with sides swapped.
    """

    family: str
    case: str
    params: Tuple[float, float, float]
    k_max: int
    rows: List[Tuple[int, float, float]]
    violations: List[Tuple[int, float, float]] = field(default_factory=list)

    def __post_init__(self):
        self.violations = [r for r in self.rows if r[1] - r[2] > SLACK]

    @property
    def passed(self):
        return not self.violations


def _log_ratio_plus(sig, j0, j1, j2):
    return math.log1p(sig / j2) + math.log1p(sig / j0) - 2.0 * math.log1p(sig / j1)


def _convexity_sides(case, spec, j0, j1, j2):
    sig = sigma(spec)
    recip = 1.0 / j2 + 1.0 / j0 - 2.0 / j1
    if case == "i":
        return j2 - j1, j1 - j0
    if case == "ii":
        recip_sq = 1.0 / j2**2 + 1.0 / j0**2 - 2.0 / j1**2
        # L > exp(rhs) compared on the log scale, stored as lhs < rhs
        return sig * recip - sig * sig * recip_sq, _log_ratio_plus(sig, j0, j1, j2)
    if case == "iii":
        return _log_ratio_plus(sig, j0, j1, j2), sig * recip
    if case == "iv":
        lhs = math.log(sig + j2) + math.log(sig + j0) - 2.0 * math.log(sig + j1)
        return lhs, (j2 - 2.0 * j1 + j0) / sig
    raise ValueError(f"unknown case {case!r}")


def _comparison_sides(case, spec, j0, j1):
    sig = sigma(spec)
    if case == "i":
        return math.pi, j1 - j0
    if case == "ii":
        return math.pi, sig * math.log(j1 / j0) + j1 - j0
    if case == "iii":
        return j1 - j0 - sig * math.log((sig + j1) / (sig + j0)), math.pi
    raise ValueError(f"unknown case {case!r}")


def _as_spec(point):
    a, c, d = point
    if c == 0 or d == 0:
        raise HypothesisError("c and d must both be nonzero")
    return ComboSpec(a, c, d)


def _check(cases, case, spec):
    if case not in cases:
        raise ValueError(f"unknown case {case!r}; expected one of {sorted(cases)}")
    ok, text = cases[case]
    if not ok(spec):
        raise HypothesisError(f"case {case} needs {text}; got a={spec.a}, c={spec.c}, d={spec.d}")


def convexity_suite(grid, k_max=100, threads=1):
    """Second-difference inequalities for ``k = 1..k_max``.

    ``grid`` is a sequence of ``(case, a, c, d)`` with case in
    ``{"i", "ii", "iii", "iv"}``. All points are validated first.
    """
    specs = [(case, _as_spec((a, c, d))) for case, a, c, d in grid]
    for case, spec in specs:
        _check(CONVEXITY_CASES, case, spec)

    def one(item):
        case, spec = item
        j = combo_zeros_range(spec, k_max + 2)
        rows = []
        for k in range(1, k_max + 1):
            lhs, rhs = _convexity_sides(case, spec, j[k - 1], j[k], j[k + 1])
            rows.append((k, lhs, rhs))
        return InequalityReport("convexity", case, (spec.a, spec.c, spec.d), k_max, rows)

    return parallel_map(one, specs, threads)


def comparison_suite(grid, k_max=100, threads=1):
    """Gap comparison inequalities against ``pi`` for ``k = 1..k_max``."""
    specs = [(case, _as_spec((a, c, d))) for case, a, c, d in grid]
    for case, spec in specs:
        _check(COMPARISON_CASES, case, spec)

    def one(item):
        case, spec = item
        j = combo_zeros_range(spec, k_max + 1)
        rows = [(k,) + _comparison_sides(case, spec, j[k - 1], j[k]) for k in range(1, k_max + 1)]
        return InequalityReport("comparison", case, (spec.a, spec.c, spec.d), k_max, rows)

    return parallel_map(one, specs, threads)


class GapLimitRow(NamedTuple):
    params: Tuple[float, float, float]
    probes: Tuple[int, ...]
    deviations: Tuple[float, ...]
    passed: bool


def gap_limit_suite(grid, probes=(10, 100, 1000), bound=1e-4, threads=1):
    """``|j_{k+1} - j_k - pi|`` at each probe ``k``.

    A point passes when the deviation at the last probe is below ``bound``
    and not above the deviation at the first probe (deviations under
    ``SLACK`` count as equal).
    """
    probes = tuple(sorted(int(k) for k in probes))
    specs = [ComboSpec(a, c, d) for a, c, d in grid]

    def one(spec):
        j = combo_zeros_range(spec, probes[-1] + 1)
        dev = tuple(abs(j[k] - j[k - 1] - math.pi) for k in probes)
        shrinks = dev[-1] < dev[0] or dev[-1] <= SLACK
        return GapLimitRow((spec.a, spec.c, spec.d), probes, dev, bool(dev[-1] < bound and shrinks))

    return parallel_map(one, specs, threads)


@dataclass
class SimplicityReport:
    params: Tuple[float, float, float]
    k_max: int
    checked: int
    failures: List[Tuple[int, float]]

    @property
    def passed(self):
        return not self.failures


def simplicity_check(grid, k_max=50, threads=1):
    """Sign change and nonvanishing slope at every zero ``j_{+-1..k_max}``.

    The slope is a central difference with step ``1e-6 max(1, |j|)``. It
    must exceed ``1e-8 M / g``, where ``M`` is the largest ``|F|`` sampled
    between the neighbouring zeros and ``g`` the distance between them, so
    the test is local and does not depend on how fast ``F`` decays.
    """
    specs = [ComboSpec(a, c, d) for a, c, d in grid]

    def one(spec):
        failures = []
        checked = 0
        for side, s in ((1, spec), (-1, spec.reflected())):
            j = combo_zeros_range(s, k_max)
            left = np.concatenate([[0.0], j[:-1]])
            # past the last zero the next one is about one gap further on
            last = 2.0 * j[-1] - j[-2] if j.size > 1 else 2.0 * j[-1]
            right = np.concatenate([j[1:], [last]])
            t = np.linspace(0.0, 1.0, 65)[1:-1]
            pts = left[:, None] + (right - left)[:, None] * t[None, :]
            local = np.max(np.abs(psi_eval(s, pts)), axis=1)
            h = np.minimum(1e-6 * np.maximum(1.0, j), 0.25 * (j - left))
            lo = psi_eval(s, j - h)
            hi = psi_eval(s, j + h)
            slope = (hi - lo) / (2.0 * h)
            bad = (np.sign(lo) * np.sign(hi) >= 0) | (np.abs(slope) * (right - left) <= 1e-8 * local)
            checked += j.size
            failures.extend((side * (i + 1), side * float(j[i])) for i in np.nonzero(bad)[0])
        return SimplicityReport((spec.a, spec.c, spec.d), k_max, checked, failures)

    return parallel_map(one, specs, threads)


# ------------------------------------------------------------ grids


def sample_case_grid(family, case, count, rng):
    """Random ``(case, a, c, d)`` tuples inside the hypotheses of a case."""
    cases = CONVEXITY_CASES if family == "convexity" else COMPARISON_CASES
    ok = cases[case][0]
    ranges = {
        ("convexity", "i"): (0.5, 5.0),
        ("convexity", "ii"): (0.0, 0.5),
        ("convexity", "iii"): (-0.5, 0.0),
        ("convexity", "iv"): (-1.0, -0.5),
        ("comparison", "i"): (0.5, 5.0),
        ("comparison", "ii"): (0.0, 5.0),
        ("comparison", "iii"): (-1.0, -0.5),
    }
    lo, hi = ranges[(family, case)]
    opposite = (family, case) in {("convexity", "iv"), ("comparison", "iii")}
    dominant = opposite or (family, case) == ("comparison", "ii")
    out = []
    while len(out) < count:
        a = float(rng.uniform(lo, hi))
        c = float(rng.uniform(0.1, 3.0))
        d = float(rng.uniform(0.1, 3.0))
        if dominant and d < c:
            c, d = d, c
        sign = 1.0 if rng.random() < 0.5 else -1.0
        c, d = sign * c, sign * d * (-1.0 if opposite else 1.0)
        spec = ComboSpec(a, c, d)
        if ok(spec):
            out.append((case, a, c, d))
    return out
