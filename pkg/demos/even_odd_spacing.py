"""Scaled zero gaps of the |x| weight at its singular point 0.

Even and odd degrees settle on different limits, the first positive gap of
J_0 zeros versus that of J_1 zeros, so the uniform spacing seen away from
singularities does not hold here.

    python3 demos/even_odd_spacing.py
"""

from ortho_sing.measure import GeneralizedJacobiMeasure, SingularPoint, stieltjes_recurrence
from ortho_sing.verify import spacing_experiment

measure = GeneralizedJacobiMeasure(0.0, 0.0, (SingularPoint.from_angle(1, 2, 1.0),))
ns = [100, 101, 200, 201, 400, 401, 800, 801, 1600, 1601]
rec = stieltjes_recurrence(measure, max(ns))

for rep in spacing_experiment(measure, 1, 1, ns, rec=rec):
    label = "even" if rep.residue == 0 else "odd"
    print(f"{label} n: predicted gap {rep.rows[-1].predicted:.6f}")
    for row in rep.rows:
        print(f"  n={row.n:5d}  measured {row.measured:.6f}  error {row.abs_error:.2e}")
    print(f"  fitted error exponent {rep.decay_exponent:.2f}, verdict {rep.verdict}")
