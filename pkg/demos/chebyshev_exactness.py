"""The bulk asymptotic formula reproduces Chebyshev polynomials exactly,
while for Legendre its error halves when the degree doubles.

    python3 demos/chebyshev_exactness.py
"""

import numpy as np

from ortho_sing.asymptotics import PhaseContext, asym_pn_away
from ortho_sing.jacobi_spectra import monic_eval_scaled
from ortho_sing.measure import GeneralizedJacobiMeasure, stieltjes_recurrence

x = np.linspace(-0.89, 0.89, 179)

cheb = GeneralizedJacobiMeasure(-0.5, -0.5)
ctx = PhaseContext.from_measure(cheb)
for n in (10, 100, 1000):
    err = np.max(np.abs(asym_pn_away(ctx, 0, n, x, scaled=True) - 2 * np.cos(n * np.arccos(x))))
    print(f"Chebyshev n={n:4d}: max |2^n (asym - pi_n)| = {err:.1e}")

leg = GeneralizedJacobiMeasure()
ctx = PhaseContext.from_measure(leg)
rec = stieltjes_recurrence(leg, 801)
env = ctx.d_infinity / (1 - x * x) ** 0.25 * np.sqrt(2 / leg.weight(x))
prev = None
for n in (100, 200, 400, 800):
    dev = np.max(np.abs(monic_eval_scaled(rec, n, x) - asym_pn_away(ctx, 0, n, x, scaled=True)) / env)
    ratio = "" if prev is None else f"  (ratio {prev / dev:.2f})"
    print(f"Legendre  n={n:4d}: envelope-relative deviation {dev:.2e}{ratio}")
    prev = dev
